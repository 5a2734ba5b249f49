//! Lattice lengths, skew unimodular maps `U_r` and their one-sided
//! piecewise versions.
//!
//! A piecewise map is applied to a region by cutting it along the fixed
//! line: the closed piece on the moving side is transformed, the closed piece
//! on the other side is kept, and the part on the line (counted twice so far)
//! is subtracted once. Since every piece is moved by a lattice automorphism,
//! lattice counts of all dilates are preserved term by term.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Hull, Mat2, Point2, Rational, RationalPolygon, Segment};
use crate::lattice::{Body, RegionExpression};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDirection {
    pub r: Point2,
    /// Primitive integer vector on the ray of `r`.
    pub r_p: Point2,
    pub lambda: Rational,
}

/// `λ(r) = gcd(a, c) / lcm(b, d)` for `r = (a/b, c/d)` in lowest terms.
pub fn lattice_length(r: &Point2) -> Result<LatticeDirection> {
    if r.is_zero() {
        return Err(Error::ZeroVector);
    }
    let num = r.x.numer().gcd(r.y.numer());
    let den = r.x.denom().lcm(r.y.denom());
    let lambda = Rational::from_big(num_rational::BigRational::new(num, den));
    let inv = lambda.recip();
    Ok(LatticeDirection {
        r: r.clone(),
        r_p: r.scale(&inv),
        lambda,
    })
}

/// Matrix of `U_r(x) = x + det(r_p, x)·r_p`.
pub fn skew_matrix(r: &Point2) -> Result<Mat2> {
    let rp = lattice_length(r)?.r_p;
    let (px, py) = (&rp.x, &rp.y);
    let one = Rational::one();
    Ok(Mat2::new(&one - px * py, px * px, -(py * py), &one + px * py))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    /// `U_r` on `det(r, x) ≥ 0`, identity elsewhere.
    #[serde(rename = "+")]
    Plus,
    /// `U_r⁻¹` on `det(r, x) < 0`, identity elsewhere.
    #[serde(rename = "-")]
    Minus,
}

/// `(U_{uv}^±)^k`: the affine one-sided skew map fixing the line through `u`
/// and `v`, composed `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseSkewMap {
    pub u: Point2,
    pub v: Point2,
    pub sign: Sign,
    pub k: u32,
}

impl PiecewiseSkewMap {
    pub fn new(u: Point2, v: Point2, sign: Sign, k: u32) -> Result<Self> {
        if !u.is_lattice() {
            return Err(Error::NonLatticeBase);
        }
        if u == v {
            return Err(Error::ZeroVector);
        }
        if k == 0 {
            return Err(Error::InvalidParameter("exponent must be positive".into()));
        }
        Ok(PiecewiseSkewMap { u, v, sign, k })
    }

    /// `(U_r^±)^k` with base point at the origin.
    pub fn linear(r: Point2, sign: Sign, k: u32) -> Result<Self> {
        Self::new(Point2::origin(), r, sign, k)
    }

    pub fn direction(&self) -> Point2 {
        &self.v - &self.u
    }

    /// `det(v − u, x − u)`; zero exactly on the fixed line.
    pub fn side(&self, x: &Point2) -> Rational {
        self.direction().cross(&(x - &self.u))
    }

    fn moves(&self, x: &Point2) -> bool {
        match self.sign {
            Sign::Plus => !self.side(x).is_negative(),
            Sign::Minus => self.side(x).is_negative(),
        }
    }

    /// The affine lattice automorphism used on the moving side.
    pub fn moving_matrix(&self) -> Mat2 {
        let m = skew_matrix(&self.direction()).expect("nonzero direction");
        let exp = match self.sign {
            Sign::Plus => self.k as i64,
            Sign::Minus => -(self.k as i64),
        };
        let m = m.pow(exp);
        let shift = &self.u - &m.apply(&self.u);
        m.with_translation(shift)
    }

    pub fn apply_point(&self, x: &Point2) -> Point2 {
        if self.moves(x) {
            self.moving_matrix().apply(x)
        } else {
            x.clone()
        }
    }
}

/// Result of applying a piecewise map, with the transformed and untouched
/// parts kept apart. `moved` also carries the correction for the fixed line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitImage {
    pub moved: RegionExpression,
    pub fixed: RegionExpression,
}

impl SplitImage {
    pub fn combined(&self) -> RegionExpression {
        let mut e = self.moved.clone();
        e.extend(self.fixed.clone());
        e.simplify()
    }
}

fn body_points(body: &Body) -> Vec<Point2> {
    match body {
        Body::Polygon(p) => p.vertices().to_vec(),
        Body::Segment(s) => vec![s.u.clone(), s.v.clone()],
        Body::Point(p) => vec![p.clone()],
    }
}

fn hull_body(points: &[Point2]) -> Option<Body> {
    match convex_hull(points) {
        Hull::Empty => None,
        Hull::Point(p) => Some(Body::Point(p)),
        Hull::Segment(a, b) => Some(Body::Segment(Segment::closed(a, b).expect("distinct"))),
        Hull::Polygon(p) => Some(Body::Polygon(p)),
    }
}

/// Clips the convex cycle `pts` to `{sign·f ≥ 0}`; also returns the points on `f = 0`.
fn clip(pts: &[Point2], f: &[Rational], sign: i32) -> (Vec<Point2>, Vec<Point2>) {
    let keep = |v: &Rational| if sign > 0 { !v.is_negative() } else { !v.is_positive() };
    let mut kept = Vec::new();
    let mut on_line = Vec::new();
    let m = pts.len();
    for i in 0..m {
        let j = (i + 1) % m;
        if keep(&f[i]) {
            kept.push(pts[i].clone());
        }
        if f[i].is_zero() {
            on_line.push(pts[i].clone());
        }
        if (f[i].is_positive() && f[j].is_negative()) || (f[i].is_negative() && f[j].is_positive()) {
            let t = &f[i] / (&f[i] - &f[j]);
            let x = &pts[i] + &(&pts[j] - &pts[i]).scale(&t);
            kept.push(x.clone());
            on_line.push(x);
        }
    }
    (kept, on_line)
}

fn split_body(body: &Body, map: &PiecewiseSkewMap, multiplicity: i64, out: &mut SplitImage) {
    let pts = body_points(body);
    let f: Vec<Rational> = pts.iter().map(|p| map.side(p)).collect();
    let (plus, line) = clip(&pts, &f, 1);
    let (minus, _) = clip(&pts, &f, -1);
    let (moving, staying) = match map.sign {
        Sign::Plus => (plus, minus),
        Sign::Minus => (minus, plus),
    };
    let m = map.moving_matrix();
    if let Some(b) = hull_body(&moving.iter().map(|p| m.apply(p)).collect::<Vec<_>>()) {
        out.moved.push(multiplicity, b);
    }
    if let Some(b) = hull_body(&line) {
        out.moved.push(-multiplicity, b);
    }
    if let Some(b) = hull_body(&staying) {
        out.fixed.push(multiplicity, b);
    }
}

/// Applies the map to every term of an expression, keeping moved and fixed
/// parts separate.
pub fn apply_split(expr: &RegionExpression, map: &PiecewiseSkewMap) -> SplitImage {
    let mut out = SplitImage::default();
    for (m, body) in expr.closed_form().terms() {
        split_body(body, map, *m, &mut out);
    }
    out.moved = out.moved.simplify();
    out.fixed = out.fixed.simplify();
    out
}

/// Applies the map termwise to a region expression.
pub fn apply_to_expression(expr: &RegionExpression, map: &PiecewiseSkewMap) -> RegionExpression {
    apply_split(expr, map).combined()
}

/// Image of a polygon: transformed piece + kept piece − shared segment on the fixed line.
pub fn apply_piecewise(region: &RationalPolygon, map: &PiecewiseSkewMap) -> Result<RegionExpression> {
    if region.vertices().iter().all(|p| map.side(p).is_zero()) {
        return Err(Error::DegenerateSplit);
    }
    Ok(apply_to_expression(&RegionExpression::polygon(region.clone()), map))
}

/// `U_{uv}^±` applied `k` times.
pub fn apply_affine_piecewise(
    region: &RationalPolygon,
    u: &Point2,
    v: &Point2,
    sign: Sign,
    k: u32,
) -> Result<RegionExpression> {
    let map = PiecewiseSkewMap::new(u.clone(), v.clone(), sign, k)?;
    apply_piecewise(region, &map)
}

/// The image of a polygon that lies entirely on one side of the fixed line
/// (touching it is allowed), as a single polygon.
pub fn image_polygon(region: &RationalPolygon, map: &PiecewiseSkewMap) -> Option<RationalPolygon> {
    let sides: Vec<Rational> = region.vertices().iter().map(|p| map.side(p)).collect();
    let nonneg = sides.iter().all(|f| !f.is_negative());
    let nonpos = sides.iter().all(|f| !f.is_positive());
    let moving = match map.sign {
        Sign::Plus => nonneg,
        Sign::Minus => nonpos,
    };
    if moving {
        Some(region.transform(&map.moving_matrix()))
    } else if nonneg || nonpos {
        Some(region.clone())
    } else {
        None
    }
}
