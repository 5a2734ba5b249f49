//! Explicit polygon families with prescribed Ehrhart data.
//!
//! Each construction returns its polygon together with a certificate whose
//! `verified` flag is set by recounting: lattice counts for the
//! pseudo-integral families, fitted period sequences for the period
//! polygons.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::ehrhart::{ehrhart_qp, period_sequence, pip_report, scott_admissible};
use crate::error::{Error, Result};
use crate::geometry::{Closedness, Point2, Rational, RationalPolygon, Segment};
use crate::lattice::{boundary_interior, count_lattice_points, count_segment, Body, RegionExpression};
use crate::pz_morphism::{apply_split, apply_to_expression, image_polygon, PiecewiseSkewMap, Sign};
use crate::search::{for_each_lattice_polygon, SearchLimits};

/// What a construction promises about its polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Interior and boundary lattice point counts, plus quasi-period 1.
    Pip { interior: u64, boundary: u64 },
    PeriodSequence([u64; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub polygon: RationalPolygon,
    pub claim: Claim,
    pub verified: bool,
}

impl ConstructionCertificate {
    fn pip(polygon: RationalPolygon, interior: u64, boundary: u64) -> Result<Self> {
        let report = pip_report(&polygon)?;
        let verified = report.is_pip
            && report.pick_defect.is_zero()
            && (report.interior, report.boundary) == (interior, boundary);
        Ok(ConstructionCertificate {
            polygon,
            claim: Claim::Pip { interior, boundary },
            verified,
        })
    }
}

/// Lattice points of the dilate `n·[u, v]` with the given closedness.
fn segment_count(u: Point2, v: Point2, closedness: Closedness, n: u64) -> i64 {
    count_segment(&Segment::new(u, v, closedness).expect("distinct endpoints"), n) as i64
}

pub const DEFAULT_SCOTT_BOUND: i64 = 24;

/// An integral polygon with `I` interior and `b` boundary lattice points,
/// using the default search bound.
pub fn scott_polygon(interior: u64, boundary: u64) -> Result<RationalPolygon> {
    scott_polygon_with_bound(interior, boundary, DEFAULT_SCOTT_BOUND)
}

/// Searches boxes `[0, m]²` for `m = 1, …, bound`.
pub fn scott_polygon_with_bound(interior: u64, boundary: u64, bound: i64) -> Result<RationalPolygon> {
    if !scott_admissible(interior, boundary, false) {
        return Err(Error::NotAdmissible { interior, boundary });
    }
    let int_poly = |pts: &[(i64, i64)]| {
        let pts: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::int(x, y)).collect();
        RationalPolygon::make(&pts).expect("nondegenerate")
    };
    if interior == 0 {
        return Ok(int_poly(&[(0, 0), (boundary as i64 - 2, 0), (0, 1)]));
    }
    if (interior, boundary) == (1, 9) {
        return Ok(int_poly(&[(0, 0), (3, 0), (0, 3)]));
    }
    let limits = SearchLimits {
        max_interior: interior,
        max_total: interior + boundary,
    };
    for side in 1..=bound {
        let anchors: Vec<(i64, i64)> = (0..=side).map(|y| (0, y)).collect();
        let mut found = None;
        let _ = for_each_lattice_polygon(&anchors, (0, side), (0, side), &limits, |v, c| {
            if (c.interior, c.boundary) == (interior, boundary) {
                found = Some(v.to_vec());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(v) = found {
            return Ok(int_poly(&v));
        }
    }
    Err(Error::SearchExhausted { bound })
}

fn require_positive(i: u64) -> Result<()> {
    if i == 0 {
        return Err(Error::InvalidParameter("I must be at least 1".into()));
    }
    Ok(())
}

/// The union of `conv{(0,0), (I+1,0), (1, 1 − 1/(I+1))}` and its mirror image
/// in the x-axis: a PIP with `I` interior points and 2 boundary points.
pub fn pip_b2(i: u64) -> Result<ConstructionCertificate> {
    require_positive(i)?;
    let h = Rational::one() - Rational::frac(1, i as i64 + 1);
    let polygon = RationalPolygon::make(&[
        Point2::int(0, 0),
        Point2::int(i as i64 + 1, 0),
        Point2::new(Rational::one(), h.clone()),
        Point2::new(Rational::one(), -h),
    ])?;
    ConstructionCertificate::pip(polygon, i, 2)
}

fn pip_b1_q(i: u64) -> Rational {
    Rational::frac(2 * i as i64 - 1, 2 * i as i64 + 1)
}

/// The triangle `conv{(0,−1), (q, 2I·q), (−q, q)}` with `q = (2I−1)/(2I+1)`:
/// a PIP with `I` interior points and a single boundary point.
pub fn pip_b1(i: u64) -> Result<ConstructionCertificate> {
    require_positive(i)?;
    let q = pip_b1_q(i);
    let polygon = RationalPolygon::make(&[
        Point2::int(0, -1),
        Point2::new(q.clone(), &q * &Rational::integer(2 * i)),
        Point2::new(-&q, q.clone()),
    ])?;
    ConstructionCertificate::pip(polygon, i, 1)
}

/// The stages `T₁, T₂, T₃, P` of the one-boundary-point construction.
///
/// `T₁` is a lattice triangle minus a half-open edge. `T₂` shears its right
/// half down onto the x-axis. The left and right wedges of `T₂` below the
/// diagonals are then folded under the x-axis, each by its own one-sided map
/// acting on the untouched part only, giving the quadrilateral `T₃`. A final
/// shear of the right half yields the triangle of [`pip_b1`].
pub fn pip_b1_pipeline(i: u64) -> Result<Vec<RegionExpression>> {
    require_positive(i)?;
    let k = (2 * i - 1) as u32;
    let top = Point2::int(1, 2 * i as i64 - 1);
    let closed = RationalPolygon::make(&[Point2::int(0, 0), top.clone(), Point2::int(-1, 0)])?;
    let t1 = RegionExpression::polygon(closed).with(
        -1,
        Body::Segment(Segment::new(Point2::origin(), top, Closedness::ExcludeStart)?),
    );
    let t2 = apply_to_expression(&t1, &PiecewiseSkewMap::linear(Point2::int(0, -1), Sign::Plus, k)?);
    let right = apply_split(&t2, &PiecewiseSkewMap::linear(Point2::int(-1, -1), Sign::Plus, 1)?);
    let left = apply_to_expression(&right.fixed, &PiecewiseSkewMap::linear(Point2::int(1, -1), Sign::Minus, 1)?);
    let mut t3 = right.moved;
    t3.extend(left);
    let t3 = t3.simplify();
    let p = apply_to_expression(&t3, &PiecewiseSkewMap::linear(Point2::int(0, 1), Sign::Minus, k)?);
    Ok(vec![t1, t2, t3, p])
}

/// The quadrilateral `T₃` of the pipeline, as a closed polygon.
pub fn pip_b1_quadrilateral(i: u64) -> Result<RationalPolygon> {
    require_positive(i)?;
    let q = pip_b1_q(i);
    RationalPolygon::make(&[
        Point2::int(0, -1),
        Point2::new(q.clone(), q.clone()),
        Point2::new(Rational::zero(), Rational::integer(i) - Rational::frac(1, 2)),
        Point2::new(-&q, q),
    ])
}

/// Named vertices of the heptagon `H(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeptagonVertices {
    pub t1: Point2,
    pub u1: Point2,
    pub v1: Point2,
    pub w: Point2,
    pub v2: Point2,
    pub u2: Point2,
    pub t2: Point2,
}

impl HeptagonVertices {
    pub fn new(s: u64) -> Self {
        let s_i = s as i64;
        let top = s_i * (s_i - 1);
        let inv = Rational::frac(1, s_i);
        HeptagonVertices {
            t1: Point2::new(-&inv, Rational::integer(top + 1)),
            u1: Point2::int(0, top + 1),
            v1: Point2::int(1, top),
            w: Point2::new(Rational::integer(s_i - 1) + &inv, Rational::zero()),
            v2: Point2::int(1, -top),
            u2: Point2::int(0, -top - 1),
            t2: Point2::new(-&inv, Rational::integer(-top - 1)),
        }
    }

    /// Counterclockwise, starting at `t2`.
    pub fn cycle(&self) -> Vec<Point2> {
        vec![
            self.t2.clone(),
            self.u2.clone(),
            self.v2.clone(),
            self.w.clone(),
            self.v1.clone(),
            self.u1.clone(),
            self.t1.clone(),
        ]
    }
}

/// `H(s)` cut into the rectangle `R` and triangles `T₁, T₂, T₃`, with the
/// maps `U₁ = U⁺_{u₁w}`, `U₂ = U⁻_{u₂w}` and the rearranged polygon `H'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heptagon {
    pub s: u64,
    pub vertices: HeptagonVertices,
    pub polygon: RationalPolygon,
    pub rect: RationalPolygon,
    pub t1: RationalPolygon,
    pub t2: RationalPolygon,
    pub t3: RationalPolygon,
    pub u1: PiecewiseSkewMap,
    pub u2: PiecewiseSkewMap,
    pub u1_t1: RationalPolygon,
    pub u2_t2: RationalPolygon,
    /// `R ∪ U₁(T₁) ∪ U₂(T₂) ∪ T₃ = conv{t₁, t₂, u₂, (s, 0), u₁}`.
    pub h_prime: RationalPolygon,
}

impl Heptagon {
    /// `L_H(n) − L_{H'}(n) − L_h(n)` with `h = (1/s, 1]`; zero for every `n`.
    pub fn gluing_defect(&self, n: u64) -> i64 {
        let h = segment_count(
            Point2::new(Rational::frac(1, self.s as i64), Rational::zero()),
            Point2::int(1, 0),
            Closedness::ExcludeStart,
            n,
        );
        count_lattice_points(&self.polygon, n) as i64 - count_lattice_points(&self.h_prime, n) as i64 - h
    }
}

pub fn heptagon_h(s: u64) -> Result<Heptagon> {
    if s < 2 {
        return Err(Error::InvalidParameter("s must be at least 2".into()));
    }
    let v = HeptagonVertices::new(s);
    let polygon = RationalPolygon::from_ccw_cycle(&v.cycle())?;
    let tri = |a: &Point2, b: &Point2, c: &Point2| RationalPolygon::make(&[a.clone(), b.clone(), c.clone()]);
    let rect = RationalPolygon::make(&[v.t1.clone(), v.t2.clone(), v.u2.clone(), v.u1.clone()])?;
    let t1 = tri(&v.u1, &v.v1, &v.w)?;
    let t2 = tri(&v.u2, &v.v2, &v.w)?;
    let t3 = tri(&v.u1, &v.u2, &v.w)?;
    let u1 = PiecewiseSkewMap::new(v.u1.clone(), v.w.clone(), Sign::Plus, 1)?;
    let u2 = PiecewiseSkewMap::new(v.u2.clone(), v.w.clone(), Sign::Minus, 1)?;
    let u1_t1 = image_polygon(&t1, &u1).ok_or(Error::DegenerateSplit)?;
    let u2_t2 = image_polygon(&t2, &u2).ok_or(Error::DegenerateSplit)?;
    let apex = Point2::int(s as i64, 0);
    let h_prime = RationalPolygon::make(&[v.t1.clone(), v.t2.clone(), v.u2.clone(), apex, v.u1.clone()])?;
    Ok(Heptagon {
        s,
        vertices: v,
        polygon,
        rect,
        t1,
        t2,
        t3,
        u1,
        u2,
        u1_t1,
        u2_t2,
        h_prime,
    })
}

/// `anchor + conv{(0,0), (1,−1), (1/r, 0)}`.
pub fn triangle_q(r: u64, anchor: &Point2) -> Result<RationalPolygon> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    if !anchor.is_lattice() {
        return Err(Error::InvalidParameter("anchor must be a lattice point".into()));
    }
    RationalPolygon::make(&[
        anchor.clone(),
        anchor + &Point2::int(1, -1),
        anchor + &Point2::new(Rational::frac(1, r as i64), Rational::zero()),
    ])
}

/// Coefficients `1, …, ζ^terms` of the power series `1 / f(ζ)` for an integer
/// polynomial with `f(0) = 1`.
pub fn series_inverse(f: &[i64], terms: usize) -> Vec<i64> {
    assert_eq!(f.first(), Some(&1));
    let mut out = vec![0i64; terms + 1];
    for k in 0..=terms {
        let acc: i64 = (1..f.len().min(k + 1)).map(|j| f[j] * out[k - j]).sum();
        out[k] = (k == 0) as i64 - acc;
    }
    out
}

/// The series `(1−ζ)⁻²(1−ζ^r)⁻¹` through `ζ^terms`.
pub fn q_generating_series(r: u64, terms: usize) -> Vec<i64> {
    let r = r as usize;
    // (1 − ζ)²(1 − ζ^r) = (1 − 2ζ + ζ²)(1 − ζ^r)
    let mut f = vec![0i64; r + 3];
    for (j, c) in [1, -2, 1].into_iter().enumerate() {
        f[j] += c;
        f[j + r] -= c;
    }
    series_inverse(&f, terms)
}

/// `H(s) ∪ Q(r)` glued along `[u₁, v₁]` (with the degenerate cases `r = 1` or
/// `s = 1` handled by `H`, `Q` or the unit square alone), certified by its
/// fitted period sequence `(r, s, 1)`.
pub fn period_polygon(r: u64, s: u64) -> Result<ConstructionCertificate> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidParameter("r and s must be positive".into()));
    }
    let polygon = match (r, s) {
        (1, 1) => RationalPolygon::make(&[Point2::int(0, 0), Point2::int(1, 0), Point2::int(1, 1), Point2::int(0, 1)])?,
        (_, 1) => triangle_q(r, &Point2::origin())?,
        (1, _) => heptagon_h(s)?.polygon,
        _ => glued_polygon(r, s)?.polygon,
    };
    let periods = period_sequence(&ehrhart_qp(&polygon)?);
    let mut verified = periods.s == [r, s, 1];
    if r >= 2 && s >= 2 {
        let glued = glued_polygon(r, s)?;
        verified &= (1..=12).all(|n| glued.gluing_defect(n) == 0);
    }
    Ok(ConstructionCertificate {
        polygon,
        claim: Claim::PeriodSequence([r, s, 1]),
        verified,
    })
}

/// `P = H(s) ∪ Q(r)` with its two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedPolygon {
    pub polygon: RationalPolygon,
    pub heptagon: RationalPolygon,
    pub triangle: RationalPolygon,
}

impl GluedPolygon {
    /// `L_P(n) − L_H(n) − L_Q(n) + (n + 1)`; zero for every `n`.
    pub fn gluing_defect(&self, n: u64) -> i64 {
        count_lattice_points(&self.polygon, n) as i64
            - count_lattice_points(&self.heptagon, n) as i64
            - count_lattice_points(&self.triangle, n) as i64
            + n as i64
            + 1
    }
}

/// Splices `Q`'s third vertex between `v₁` and `u₁` in the cycle of `H`; `u₁`
/// becomes a straight-angle point and is dropped.
pub fn glued_polygon(r: u64, s: u64) -> Result<GluedPolygon> {
    let h = heptagon_h(s)?;
    let v = &h.vertices;
    let q = triangle_q(r, &v.u1)?;
    let apex = &v.u1 + &Point2::new(Rational::frac(1, r as i64), Rational::zero());
    let mut cycle = v.cycle();
    let at = cycle.iter().position(|p| *p == v.u1).expect("u1 is a vertex");
    cycle.insert(at, apex);
    let polygon = RationalPolygon::from_ccw_cycle(&cycle).map_err(|_| Error::ConvexityFailure)?;
    if polygon.area() != h.polygon.area() + q.area() {
        return Err(Error::ConvexityFailure);
    }
    Ok(GluedPolygon {
        polygon,
        heptagon: h.polygon,
        triangle: q,
    })
}

/// `(I, b)` of a polygon, for certificate checks.
pub fn interior_boundary(polygon: &RationalPolygon) -> (u64, u64) {
    let c = boundary_interior(polygon);
    (c.interior, c.boundary)
}
