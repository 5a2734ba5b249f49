//! Scans over parameter regions: the `(I, b)` realizability map and a
//! search for pseudo-integral triangles on rational grids.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{ehrhart_qp, period_sequence, scott_admissible};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Rational, RationalPolygon};
use crate::lattice::{boundary_interior, Kernel};

/// Environment variable capping scan parallelism.
pub const THREADS_ENV: &str = "EHRHART_LAB_THREADS";

/// Runs `f` on a rayon pool sized by [`THREADS_ENV`] when it is set.
pub fn with_scan_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScottMapRow {
    pub interior: u64,
    pub boundary: u64,
    pub realizable_integral: bool,
    /// Realizable by some PIP known to exist: integral polygons plus the
    /// nonintegral families with one or two boundary points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realizable_pip_known: Option<bool>,
}

pub fn scott_map(max_interior: u64, max_boundary: u64, pips: bool) -> Vec<ScottMapRow> {
    let mut rows = Vec::new();
    for interior in 0..=max_interior {
        for boundary in 0..=max_boundary {
            rows.push(ScottMapRow {
                interior,
                boundary,
                realizable_integral: scott_admissible(interior, boundary, false),
                realizable_pip_known: pips.then(|| scott_admissible(interior, boundary, true)),
            });
        }
    }
    rows
}

/// A pseudo-integral polygon found by [`pip_scan`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PipRow {
    pub interior: u64,
    pub boundary: u64,
    pub vertices: Vec<Point2>,
}

/// Coordinates `(x·q, y·q)` of a triangle on the `1/q` grid.
type GridTriangle = [(i64, i64); 3];

/// Sound rejection test: a PIP has `L(n) = A·n² + c₁·n + 1`, with `c₁` fixed by `L(1)`.
fn passes_polynomial_prefilter(kernel: &Kernel<i64>, area2_scaled: i64, q: i64, dilate_bound: u64) -> bool {
    // area = area2_scaled / (2q²)
    let l1 = kernel.count(1);
    let two_q2 = 2 * q * q;
    // 2q²·L(n) = area2_scaled·n² + (2q²·(L(1) − 1) − area2_scaled)·n + 2q²
    let lin = two_q2 * (l1 - 1) - area2_scaled;
    (2..=dilate_bound as i64).all(|n| two_q2 * kernel.count(n) == area2_scaled * n * n + lin * n + two_q2)
}

fn triangle_polygon(t: &GridTriangle, q: i64) -> RationalPolygon {
    let pts: Vec<Point2> = t
        .iter()
        .map(|&(x, y)| Point2::new(Rational::frac(x, q), Rational::frac(y, q)))
        .collect();
    RationalPolygon::make(&pts).expect("nondegenerate triangle")
}

fn scan_anchor(first: (i64, i64), grid: &[(i64, i64)], q: i64, lo: i64, dilate_bound: u64) -> Vec<PipRow> {
    let mut rows = Vec::new();
    let start = grid.partition_point(|&p| p <= first);
    for (j, &b) in grid.iter().enumerate().skip(start) {
        for &c in &grid[j + 1..] {
            let area2 = (b.0 - first.0) * (c.1 - first.1) - (b.1 - first.1) * (c.0 - first.0);
            if area2 == 0 {
                continue;
            }
            // one representative per integer translate: the bounding box starts in the first cell
            let min_y = first.1.min(b.1).min(c.1);
            if min_y >= lo + q {
                continue;
            }
            // denominator exactly q
            let g = [first.0, first.1, b.0, b.1, c.0, c.1].iter().fold(q, |acc, v| acc.gcd(v));
            if g != 1 {
                continue;
            }
            let ccw = if area2 > 0 { [first, b, c] } else { [first, c, b] };
            let kernel = Kernel::from_scaled(q, &ccw);
            if !passes_polynomial_prefilter(&kernel, area2.abs(), q, dilate_bound) {
                continue;
            }
            let poly = triangle_polygon(&ccw, q);
            let Ok(qp) = ehrhart_qp(&poly) else { continue };
            if period_sequence(&qp).quasi_period != 1 {
                continue;
            }
            let counts = boundary_interior(&poly);
            rows.push(PipRow {
                interior: counts.interior,
                boundary: counts.boundary,
                vertices: poly.vertices().to_vec(),
            });
        }
    }
    rows
}

/// Pseudo-integral triangles with vertices on the `1/q` grid in
/// `[−bound, bound]²`, for every `q ≤ max_denominator`.
///
/// Each triangle is listed once per integer translation class (bounding
/// box starting in the lower-left unit cell) under the exact denominator
/// `q`. Candidates must match a polynomial with constant term 1 for
/// `n ≤ dilate_bound` before the full quasi-polynomial fit confirms them.
/// Rows are sorted.
pub fn pip_scan(max_denominator: u64, coordinate_bound: u64, dilate_bound: u64) -> Result<Vec<PipRow>> {
    if dilate_bound < 2 {
        return Err(Error::InvalidParameter("dilate bound must be at least 2".into()));
    }
    let c = coordinate_bound as i64;
    let mut rows: Vec<PipRow> = Vec::new();
    for q in 1..=max_denominator as i64 {
        let lo = -c * q;
        let grid: Vec<(i64, i64)> = (lo..=c * q).flat_map(|x| (lo..=c * q).map(move |y| (x, y))).collect();
        // the lexicographically least vertex has the least x
        let anchors: Vec<(i64, i64)> = grid.iter().copied().filter(|p| p.0 < lo + q).collect();
        let found: Vec<PipRow> = with_scan_pool(|| {
            anchors
                .par_iter()
                .flat_map_iter(|&a| scan_anchor(a, &grid, q, lo, dilate_bound))
                .collect()
        });
        rows.extend(found);
    }
    rows.sort();
    Ok(rows)
}
