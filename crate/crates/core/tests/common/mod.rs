#![allow(dead_code)]

use ehrhart_core::{Hull, Point2, Rational, RationalPolygon};
use ehrhart_core::geometry::convex_hull;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5eed_e4a7;

/// A random point on the `1/den` grid with both coordinates in `[−bound, bound]`.
pub fn random_point(rng: &mut impl Rng, max_den: i64, bound: i64) -> Point2 {
    let coord = |rng: &mut dyn rand::RngCore| {
        let den = rng.gen_range(1..=max_den);
        Rational::frac(rng.gen_range(-bound * den..=bound * den), den)
    };
    let x = coord(rng);
    let y = coord(rng);
    Point2::new(x, y)
}

/// Hull of 3 to 7 random points, retried until it is two-dimensional.
pub fn random_polygon(rng: &mut impl Rng, max_den: i64, bound: i64) -> RationalPolygon {
    loop {
        let k = rng.gen_range(3..=7);
        let pts: Vec<Point2> = (0..k).map(|_| random_point(rng, max_den, bound)).collect();
        if let Hull::Polygon(p) = convex_hull(&pts) {
            return p;
        }
    }
}

/// The fixed randomized suite: denominators ≤ 6, coordinates in `[−8, 8]`.
pub fn random_suite(size: usize) -> Vec<RationalPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..size).map(|_| random_polygon(&mut rng, 6, 8)).collect()
}
