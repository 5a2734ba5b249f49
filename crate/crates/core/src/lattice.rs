//! Exact lattice-point counting for dilates of polygons, segments, points and
//! signed combinations of them.
//!
//! Polygons are counted column by column: every edge becomes an integer
//! half-plane `a·x + b·y + n·c ≥ 0` for the dilate `nP`, and each integer
//! column contributes `⌊y_max⌋ − ⌈y_min⌉ + 1` points. A separate brute-force
//! oracle tests every lattice point of the bounding box instead.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::geometry::{
    integers_between, primitive_direction, Location, Point2, Rational, RationalPolygon, Segment,
};

/// Integer types the column kernel can run on.
pub(crate) trait KernelInt: Clone + Debug + Ord + Integer + Signed + From<i64> {
    fn to_big(&self) -> BigInt;
}

impl KernelInt for i64 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl KernelInt for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl KernelInt for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn div_ceil<T: KernelInt>(num: T, den: &T) -> T {
    -((-num).div_floor(den))
}

/// Half-plane `a·x + b·y + n·c ≥ 0` in lattice coordinates of the dilate `nP`.
#[derive(Clone, Debug)]
pub(crate) struct HalfPlane<T> {
    a: T,
    b: T,
    c: T,
}

/// Column-scan counter for the dilates of one convex polygon.
#[derive(Clone, Debug)]
pub(crate) struct Kernel<T> {
    planes: Vec<HalfPlane<T>>,
    den: T,
    x_min: T,
    x_max: T,
}

impl<T: KernelInt> Kernel<T> {
    /// `verts` are the integer vertices of `den·P` in counterclockwise order.
    pub(crate) fn from_scaled(den: T, verts: &[(T, T)]) -> Self {
        let n = verts.len();
        let mut planes = Vec::with_capacity(n);
        for i in 0..n {
            let (px, py) = &verts[i];
            let (qx, qy) = &verts[(i + 1) % n];
            let ex = qx.clone() - px.clone();
            let ey = qy.clone() - py.clone();
            let a = -(ey.clone() * den.clone());
            let b = ex.clone() * den.clone();
            let c = ey * px.clone() - ex * py.clone();
            let g = a.gcd(&b).gcd(&c);
            planes.push(HalfPlane {
                a: a / g.clone(),
                b: b / g.clone(),
                c: c / g,
            });
        }
        let x_min = verts.iter().map(|v| v.0.clone()).min().expect("nonempty");
        let x_max = verts.iter().map(|v| v.0.clone()).max().expect("nonempty");
        Kernel {
            planes,
            den,
            x_min,
            x_max,
        }
    }

    fn to_big(&self) -> Kernel<BigInt> {
        Kernel {
            planes: self
                .planes
                .iter()
                .map(|h| HalfPlane {
                    a: h.a.to_big(),
                    b: h.b.to_big(),
                    c: h.c.to_big(),
                })
                .collect(),
            den: self.den.to_big(),
            x_min: self.x_min.to_big(),
            x_max: self.x_max.to_big(),
        }
    }

    /// Visits every nonempty column `(x, y_lo, y_hi)` of `nP`.
    pub(crate) fn for_each_column(&self, n: T, mut f: impl FnMut(T, T, T)) {
        let lo_x = div_ceil(n.clone() * self.x_min.clone(), &self.den);
        let hi_x = (n.clone() * self.x_max.clone()).div_floor(&self.den);
        let mut x = lo_x;
        while x <= hi_x {
            if let Some((lo, hi)) = self.column(&n, &x) {
                f(x.clone(), lo, hi);
            }
            x = x + T::one();
        }
    }

    fn column(&self, n: &T, x: &T) -> Option<(T, T)> {
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for h in &self.planes {
            // b·y ≥ −(a·x + n·c)
            let rhs = -(h.a.clone() * x.clone() + n.clone() * h.c.clone());
            if h.b.is_positive() {
                let bound = div_ceil(rhs, &h.b);
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if h.b.is_negative() {
                let bound = (-rhs).div_floor(&(-h.b.clone()));
                if hi.as_ref().is_none_or(|u| bound < *u) {
                    hi = Some(bound);
                }
            } else if rhs.is_positive() {
                return None;
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
            _ => None,
        }
    }

    pub(crate) fn count(&self, n: T) -> T {
        let mut total = T::zero();
        self.for_each_column(n, |_, lo, hi| total = total.clone() + hi - lo + T::one());
        total
    }
}

const SMALL_LIMIT: i64 = 1 << 30;

/// Column kernel built from a rational polygon, on `i128` when the scaled
/// coordinates are small enough to rule out overflow and on `BigInt` otherwise.
#[derive(Clone, Debug)]
pub(crate) enum ColumnKernel {
    Small(Kernel<i128>),
    Big(Kernel<BigInt>),
}

impl ColumnKernel {
    pub(crate) fn new(polygon: &RationalPolygon) -> Self {
        let (den, verts) = polygon.scaled_integer_vertices();
        let small = |v: &BigInt| v.to_i64().is_some_and(|x| x.abs() < SMALL_LIMIT);
        if small(&den) && verts.iter().all(|(x, y)| small(x) && small(y)) {
            let to = |v: &BigInt| v.to_i128().unwrap();
            let verts: Vec<(i128, i128)> = verts.iter().map(|(x, y)| (to(x), to(y))).collect();
            ColumnKernel::Small(Kernel::from_scaled(to(&den), &verts))
        } else {
            ColumnKernel::Big(Kernel::from_scaled(den, &verts))
        }
    }

    pub(crate) fn count(&self, n: u64) -> u64 {
        let total = match self {
            ColumnKernel::Small(k) if n < SMALL_LIMIT as u64 => k.count(n as i128).to_big(),
            ColumnKernel::Small(k) => k.to_big().count(BigInt::from(n)),
            ColumnKernel::Big(k) => k.count(BigInt::from(n)),
        };
        total.to_u64().expect("lattice count fits in u64")
    }

    pub(crate) fn for_each_column(&self, n: u64, mut f: impl FnMut(BigInt, BigInt, BigInt)) {
        let big;
        let kernel = match self {
            ColumnKernel::Small(k) if n < SMALL_LIMIT as u64 => {
                return k.for_each_column(n as i128, |x, lo, hi| f(x.into(), lo.into(), hi.into()));
            }
            ColumnKernel::Small(k) => {
                big = k.to_big();
                &big
            }
            ColumnKernel::Big(k) => k,
        };
        kernel.for_each_column(BigInt::from(n), f)
    }
}

/// `|nP ∩ ℤ²|` by column scan.
pub fn count_lattice_points(polygon: &RationalPolygon, n: u64) -> u64 {
    ColumnKernel::new(polygon).count(n)
}

/// Counts `|nP ∩ ℤ²|` for `n = 1..=max_n` sharing one kernel.
pub fn count_range(polygon: &RationalPolygon, max_n: u64) -> Vec<u64> {
    let kernel = ColumnKernel::new(polygon);
    (1..=max_n).map(|n| kernel.count(n)).collect()
}

/// Brute-force `|nP ∩ ℤ²|`: classifies every lattice point of the bounding
/// box of `nP` by half-plane sign tests.
pub fn oracle_count(polygon: &RationalPolygon, n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let dilate = polygon.dilate(n);
    let (lo, hi) = dilate.bounds();
    let (x0, x1) = (lo.x.ceil(), hi.x.floor());
    let (y0, y1) = (lo.y.ceil(), hi.y.floor());
    let (den, verts) = dilate.scaled_integer_vertices();
    let small = |v: &BigInt| v.to_i64().is_some_and(|x| x.abs() < SMALL_LIMIT);
    let mut count = 0u64;
    if small(&den) && verts.iter().all(|(x, y)| small(x) && small(y)) {
        let d = den.to_i128().unwrap();
        let vs: Vec<(i128, i128)> = verts
            .iter()
            .map(|(x, y)| (x.to_i128().unwrap(), y.to_i128().unwrap()))
            .collect();
        let m = vs.len();
        let (x0, x1, y0, y1) = (x0.to_i128().unwrap(), x1.to_i128().unwrap(), y0.to_i128().unwrap(), y1.to_i128().unwrap());
        for x in x0..=x1 {
            for y in y0..=y1 {
                let (px, py) = (x * d, y * d);
                let inside = (0..m).all(|i| {
                    let (ax, ay) = vs[i];
                    let (bx, by) = vs[(i + 1) % m];
                    (bx - ax) * (py - ay) - (by - ay) * (px - ax) >= 0
                });
                count += inside as u64;
            }
        }
    } else {
        let mut x = x0;
        while x <= x1 {
            let mut y = y0.clone();
            while y <= y1 {
                let p = Point2::new(x.clone().into(), y.clone().into());
                count += (dilate.locate(&p) != Location::Outside) as u64;
                y += 1;
            }
            x += 1;
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryInteriorCounts {
    pub boundary: u64,
    pub interior: u64,
}

impl BoundaryInteriorCounts {
    pub fn total(&self) -> u64 {
        self.boundary + self.interior
    }
}

/// Lattice points on the boundary (edge by edge, each edge owning its source
/// vertex) and in the interior of `P`.
pub fn boundary_interior(polygon: &RationalPolygon) -> BoundaryInteriorCounts {
    let boundary: u64 = polygon
        .edges()
        .map(|(a, b)| lattice_points_on_closed_segment(a, b) - b.is_lattice() as u64)
        .sum();
    let total = count_lattice_points(polygon, 1);
    BoundaryInteriorCounts {
        boundary,
        interior: total - boundary,
    }
}

/// Lattice points on the closed segment `[a, b]`.
pub(crate) fn lattice_points_on_closed_segment(a: &Point2, b: &Point2) -> u64 {
    if a == b {
        return a.is_lattice() as u64;
    }
    let (rx, ry) = primitive_direction(&(b - a)).expect("distinct endpoints");
    // The line is ⟨ν, x⟩ = c with primitive ν; it meets ℤ² iff c ∈ ℤ.
    let (nx, ny) = (-ry.clone(), rx.clone());
    let c = Rational::integer(nx.clone()) * &a.x + Rational::integer(ny.clone()) * &a.y;
    if !c.is_integer() {
        return 0;
    }
    let egcd = nx.extended_gcd(&ny);
    debug_assert!(egcd.gcd.is_one());
    let p0 = Point2::new((c.numer() * &egcd.x).into(), (c.numer() * &egcd.y).into());
    let rp = Point2::new(rx.clone().into(), ry.clone().into());
    let norm = rp.dot(&rp);
    // a + σ·r_p = p0, and b = a + λ·r_p
    let sigma = (&p0 - a).dot(&rp) / &norm;
    let lambda = (b - a).dot(&rp) / &norm;
    integers_between(&-&sigma, &(&lambda - &sigma))
        .to_u64()
        .expect("count fits in u64")
}

/// Lattice points on the dilated segment `n·s`, honoring its closedness.
pub fn count_segment(segment: &Segment, n: u64) -> u64 {
    let k = Rational::integer(n);
    let (u, v) = (segment.u.scale(&k), segment.v.scale(&k));
    let mut count = lattice_points_on_closed_segment(&u, &v);
    if segment.excludes_start() && u.is_lattice() {
        count -= 1;
    }
    if segment.excludes_end() && v.is_lattice() {
        count -= 1;
    }
    count
}

/// One body of a [`RegionExpression`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Polygon(RationalPolygon),
    Segment(Segment),
    Point(Point2),
}

impl Body {
    pub fn count(&self, n: u64) -> u64 {
        match self {
            Body::Polygon(p) => count_lattice_points(p, n),
            Body::Segment(s) => count_segment(s, n),
            Body::Point(p) => p.scale(&Rational::integer(n)).is_lattice() as u64,
        }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        match self {
            Body::Polygon(poly) => poly.contains(p),
            Body::Segment(s) => s.contains(p),
            Body::Point(q) => p == q,
        }
    }
}

/// Signed integer combination of closed polygons, segments and points.
///
/// Represents the function `x ↦ Σ m_i·[x ∈ body_i]`; semi-open regions are a
/// closed body minus the missing boundary pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionExpression {
    terms: Vec<(i64, Body)>,
}

impl RegionExpression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polygon(p: RationalPolygon) -> Self {
        let mut e = Self::new();
        e.push(1, Body::Polygon(p));
        e
    }

    pub fn push(&mut self, multiplicity: i64, body: Body) {
        if multiplicity != 0 {
            self.terms.push((multiplicity, body));
        }
    }

    pub fn with(mut self, multiplicity: i64, body: Body) -> Self {
        self.push(multiplicity, body);
        self
    }

    pub fn extend(&mut self, other: RegionExpression) {
        self.terms.extend(other.terms);
    }

    pub fn terms(&self) -> &[(i64, Body)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn count(&self, n: u64) -> i64 {
        self.terms
            .iter()
            .map(|(m, body)| m * body.count(n) as i64)
            .sum()
    }

    /// `Σ m_i·[p ∈ body_i]`.
    pub fn multiplicity_at(&self, p: &Point2) -> i64 {
        self.terms
            .iter()
            .filter(|(_, body)| body.contains(p))
            .map(|(m, _)| m)
            .sum()
    }

    /// Rewrites half-open and open segments as closed segments minus points.
    pub fn closed_form(&self) -> RegionExpression {
        let mut out = RegionExpression::new();
        for (m, body) in &self.terms {
            match body {
                Body::Segment(s) if s.closedness != crate::geometry::Closedness::Closed => {
                    out.push(
                        *m,
                        Body::Segment(Segment {
                            closedness: crate::geometry::Closedness::Closed,
                            ..s.clone()
                        }),
                    );
                    if s.excludes_start() {
                        out.push(-m, Body::Point(s.u.clone()));
                    }
                    if s.excludes_end() {
                        out.push(-m, Body::Point(s.v.clone()));
                    }
                }
                _ => out.push(*m, body.clone()),
            }
        }
        out
    }

    /// Merges equal bodies (closed segments compare as unordered pairs) and
    /// drops zero multiplicities.
    pub fn simplify(&self) -> RegionExpression {
        let mut merged: Vec<(i64, Body)> = Vec::new();
        for (m, body) in &self.terms {
            let key = canonical_body(body);
            match merged.iter_mut().find(|(_, b)| *b == key) {
                Some(entry) => entry.0 += m,
                None => merged.push((*m, key)),
            }
        }
        RegionExpression {
            terms: merged.into_iter().filter(|(m, _)| *m != 0).collect(),
        }
    }

    /// The polygons with positive multiplicity, in order.
    pub fn polygons(&self) -> impl Iterator<Item = &RationalPolygon> {
        self.terms.iter().filter_map(|(m, b)| match b {
            Body::Polygon(p) if *m > 0 => Some(p),
            _ => None,
        })
    }
}

fn canonical_body(body: &Body) -> Body {
    match body {
        Body::Segment(s) if s.closedness == crate::geometry::Closedness::Closed && s.v < s.u => Body::Segment(Segment {
            u: s.v.clone(),
            v: s.u.clone(),
            closedness: s.closedness,
        }),
        _ => body.clone(),
    }
}

/// Σ multiplicity × count(body, n).
pub fn count_region(expr: &RegionExpression, n: u64) -> i64 {
    expr.count(n)
}
