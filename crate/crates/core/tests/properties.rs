mod common;

use ehrhart_core::ehrhart::{
    ehrhart_qp, fit_quasi_polynomial, index_sequence, mcmullen_check, period_sequence, segment_constant_table,
};
use ehrhart_core::geometry::convex_hull;
use ehrhart_core::lattice::{count_lattice_points, count_segment, oracle_count};
use ehrhart_core::pz_morphism::{apply_piecewise, lattice_length, skew_matrix, PiecewiseSkewMap, Sign};
use ehrhart_core::reflexive::{extract_word, polar_dual, reconstruct_path, reflexive_classes, word_product};
use ehrhart_core::{Closedness, Hull, Location, Point2, Rational, RationalPolygon, Segment};
use proptest::prelude::*;

fn coord(max_den: i64, bound: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(move |d| (-bound * d..=bound * d).prop_map(move |n| Rational::frac(n, d)))
}

fn point(max_den: i64, bound: i64) -> impl Strategy<Value = Point2> {
    (coord(max_den, bound), coord(max_den, bound)).prop_map(|(x, y)| Point2::new(x, y))
}

fn polygon(max_den: i64, bound: i64) -> impl Strategy<Value = RationalPolygon> {
    prop::collection::vec(point(max_den, bound), 3..=6).prop_filter_map("degenerate hull", |pts| match convex_hull(&pts) {
        Hull::Polygon(p) => Some(p),
        _ => None,
    })
}

/// Polygons with the origin strictly inside.
fn origin_polygon() -> impl Strategy<Value = RationalPolygon> {
    polygon(4, 3).prop_filter("origin not interior", |p| p.locate(&Point2::origin()) == Location::Interior)
}

fn nonzero_point(max_den: i64, bound: i64) -> impl Strategy<Value = Point2> {
    point(max_den, bound).prop_filter("zero vector", |p| !p.is_zero())
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scan_count_equals_oracle(p in polygon(6, 5), n in 0u64..=12) {
        prop_assert_eq!(count_lattice_points(&p, n), oracle_count(&p, n));
    }

    #[test]
    fn fitted_quasi_polynomial_reproduces_oracle(p in polygon(4, 3)) {
        let qp = ehrhart_qp(&p).unwrap();
        for n in 1..=30u64 {
            prop_assert_eq!(qp.evaluate(n), Rational::integer(oracle_count(&p, n)));
        }
    }

    #[test]
    fn mcmullen_divisibility(p in polygon(6, 4)) {
        let s = period_sequence(&ehrhart_qp(&p).unwrap()).s;
        let j = index_sequence(&p).j;
        prop_assert!(s.iter().zip(j).all(|(s, j)| j % s == 0), "s = {:?}, j = {:?}", s, j);
        prop_assert!(mcmullen_check(&p).unwrap());
    }

    #[test]
    fn piecewise_maps_preserve_counts(
        p in polygon(4, 3),
        ux in -2i64..=2,
        uy in -2i64..=2,
        r in nonzero_point(3, 2),
        sign in sign(),
        k in 1u32..=3,
    ) {
        let u = Point2::int(ux, uy);
        let v = &u + &r;
        let map = PiecewiseSkewMap::new(u, v, sign, k).unwrap();
        let image = apply_piecewise(&p, &map).unwrap();
        for n in 1..=8u64 {
            prop_assert_eq!(image.count(n), oracle_count(&p, n) as i64, "n = {}", n);
        }
    }

    #[test]
    fn lattice_length_is_homogeneous(r in nonzero_point(6, 5), num in 1i64..=12, den in 1i64..=6) {
        let m = Rational::frac(num, den);
        let scaled = lattice_length(&r.scale(&m)).unwrap();
        let base = lattice_length(&r).unwrap();
        prop_assert_eq!(&scaled.lambda, &(&base.lambda * &m));
        prop_assert_eq!(scaled.r_p, base.r_p);
    }

    #[test]
    fn skew_matrix_depends_on_ray_only(r in nonzero_point(6, 5), m in 1i64..=9) {
        let u = skew_matrix(&r).unwrap();
        prop_assert_eq!(&skew_matrix(&r.scale(&Rational::integer(m))).unwrap(), &u);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.apply(&r), r);
    }

    #[test]
    fn polar_dual_is_an_involution(p in origin_polygon()) {
        let dual = polar_dual(&p).unwrap();
        prop_assert_eq!(polar_dual(&dual).unwrap(), p);
    }

    #[test]
    fn polygon_json_round_trip(p in polygon(6, 8)) {
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalPolygon>(&json).unwrap(), p);
    }

    #[test]
    fn dilation_scales_counts_consistently(p in polygon(4, 3), m in 1u64..=4, n in 0u64..=5) {
        prop_assert_eq!(count_lattice_points(&p.dilate(m), n), count_lattice_points(&p, m * n));
    }
}

#[test]
fn closed_and_half_open_segment_constants_sum_to_one() {
    for s in 2..=12u64 {
        let h = Segment::new(
            Point2::new(Rational::frac(1, s as i64), Rational::zero()),
            Point2::int(1, 0),
            Closedness::ExcludeStart,
        )
        .unwrap();
        let qp = fit_quasi_polynomial(s, 1, |n| count_segment(&h, n) as i64).unwrap();
        let segment = segment_constant_table(s);
        for (a, b) in qp.c0.iter().zip(&segment) {
            assert_eq!(a + b, Rational::integer(1), "s = {s}");
        }
    }
}

#[test]
fn reflexive_words_round_trip() {
    for p in reflexive_classes(3) {
        let extracted = extract_word(&p).unwrap();
        assert!(word_product(&extracted.word).is_identity(), "{p}");
        let path = reconstruct_path(&extracted.word).unwrap();
        assert_eq!(path.vertices, extracted.vertices, "{p}");
        assert_eq!(path.winding, 1);
        let json = serde_json::to_string(&extracted.word).unwrap();
        assert_eq!(serde_json::from_str::<ehrhart_core::reflexive::GeneratorWord>(&json).unwrap(), extracted.word);
    }
}

#[test]
fn random_suite_is_reproducible() {
    assert_eq!(common::random_suite(20), common::random_suite(20));
}
