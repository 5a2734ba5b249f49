use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Mat2;
use super::point::{orient, Point2};
use super::rational::{lcm_denominators, Rational};
use crate::error::Error;

/// Strictly convex polygon with rational vertices.
///
/// Vertices are stored counterclockwise starting from the lexicographically
/// least vertex, so two polygons are equal exactly when they are the same
/// point set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<Point2>,
}

/// Convex hull of a finite point set, by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hull {
    Empty,
    Point(Point2),
    Segment(Point2, Point2),
    Polygon(RationalPolygon),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Supporting line of an edge: `⟨normal, x⟩ = offset`, with `normal` the
/// primitive integer outer normal. The polygon lies in `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLine {
    pub normal: (BigInt, BigInt),
    pub offset: Rational,
}

impl EdgeLine {
    pub fn normal_point(&self) -> Point2 {
        Point2::new(self.normal.0.clone().into(), self.normal.1.clone().into())
    }
}

/// Convex hull by monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[Point2]) -> Hull {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return Hull::Empty,
        1 => return Hull::Point(pts.pop().unwrap()),
        _ => {}
    }
    let mut lower: Vec<Point2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        let first = pts.first().unwrap().clone();
        let last = pts.last().unwrap().clone();
        return Hull::Segment(first, last);
    }
    Hull::Polygon(RationalPolygon { vertices: lower })
}

impl RationalPolygon {
    /// Convex hull of `points` in canonical form.
    pub fn make(points: &[Point2]) -> Result<Self, Error> {
        match convex_hull(points) {
            Hull::Polygon(p) => Ok(p),
            _ => Err(Error::DegenerateInput),
        }
    }

    /// Builds a polygon from a cyclic vertex list that must already be convex
    /// and counterclockwise. Collinear (non-corner) points are dropped; a
    /// reflex turn or a clockwise cycle is rejected.
    pub fn from_ccw_cycle(cycle: &[Point2]) -> Result<Self, Error> {
        let n = cycle.len();
        if n < 3 {
            return Err(Error::DegenerateInput);
        }
        let mut corners = Vec::with_capacity(n);
        for i in 0..n {
            let turn = orient(&cycle[(i + n - 1) % n], &cycle[i], &cycle[(i + 1) % n]);
            if turn.is_negative() {
                return Err(Error::NotConvex);
            }
            if turn.is_positive() {
                corners.push(cycle[i].clone());
            }
        }
        // A convex cycle winds exactly once: the signed area must be positive
        // and match the hull of its corners.
        let hull = Self::make(&corners).map_err(|_| Error::NotConvex)?;
        if hull.vertices.len() != corners.len() || shoelace2(&corners) != shoelace2(&hull.vertices) {
            return Err(Error::NotConvex);
        }
        Ok(hull)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Rational {
        shoelace2(&self.vertices) / Rational::integer(2)
    }

    /// `nP` for `n ≥ 1`.
    pub fn dilate(&self, n: u64) -> RationalPolygon {
        let k = Rational::integer(n);
        self.map_vertices(|v| v.scale(&k))
    }

    pub fn translate(&self, t: &Point2) -> RationalPolygon {
        self.map_vertices(|v| v + t)
    }

    /// Image under an invertible affine map.
    pub fn transform(&self, m: &Mat2) -> RationalPolygon {
        let pts: Vec<Point2> = self.vertices.iter().map(|v| m.apply(v)).collect();
        RationalPolygon::make(&pts).expect("invertible image of a polygon is a polygon")
    }

    fn map_vertices(&self, f: impl Fn(&Point2) -> Point2) -> RationalPolygon {
        let pts: Vec<Point2> = self.vertices.iter().map(f).collect();
        RationalPolygon::make(&pts).expect("nondegenerate image")
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(Point2::is_lattice)
    }

    /// lcm of all vertex coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        lcm_denominators(self.vertices.iter().flat_map(|v| [&v.x, &v.y]))
    }

    pub fn locate(&self, p: &Point2) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            let s = orient(a, b, p);
            if s.is_negative() {
                return Location::Outside;
            }
            on_edge |= s.is_zero();
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.locate(p) != Location::Outside
    }

    pub fn edge_lines(&self) -> Vec<EdgeLine> {
        self.edges().map(|(a, b)| edge_line(a, b)).collect()
    }

    /// Bounding box `(min, max)` of the vertices.
    pub fn bounds(&self) -> (Point2, Point2) {
        let xs = self.vertices.iter().map(|v| &v.x);
        let ys = self.vertices.iter().map(|v| &v.y);
        let min = Point2::new(xs.clone().min().unwrap().clone(), ys.clone().min().unwrap().clone());
        let max = Point2::new(xs.max().unwrap().clone(), ys.max().unwrap().clone());
        (min, max)
    }

    /// Common denominator `d` and the integer vertices of `d·P`.
    pub fn scaled_integer_vertices(&self) -> (BigInt, Vec<(BigInt, BigInt)>) {
        let d = self.denominator();
        let scaled = self
            .vertices
            .iter()
            .map(|v| {
                let x = (&v.x * Rational::integer(d.clone())).numer().clone();
                let y = (&v.y * Rational::integer(d.clone())).numer().clone();
                (x, y)
            })
            .collect();
        (d, scaled)
    }
}

/// Twice the signed area of a vertex cycle.
pub(crate) fn shoelace2(vertices: &[Point2]) -> Rational {
    let n = vertices.len();
    (0..n)
        .map(|i| vertices[i].cross(&vertices[(i + 1) % n]))
        .sum()
}

/// Line through `a`, `b` written with the primitive integer normal on the
/// right of the direction `a -> b` (the outer normal for a CCW polygon).
pub fn edge_line(a: &Point2, b: &Point2) -> EdgeLine {
    let d = b - a;
    // outward normal of a CCW edge is (dy, -dx)
    let raw = Point2::new(d.y.clone(), -&d.x);
    let normal = primitive_direction(&raw).expect("edge endpoints are distinct");
    let np = Point2::new(normal.0.clone().into(), normal.1.clone().into());
    let offset = np.dot(a);
    EdgeLine { normal, offset }
}

/// Primitive integer vector on the ray of a nonzero rational vector.
pub fn primitive_direction(v: &Point2) -> Option<(BigInt, BigInt)> {
    if v.is_zero() {
        return None;
    }
    let den = v.denominator();
    let x = (&v.x * Rational::integer(den.clone())).numer().clone();
    let y = (&v.y * Rational::integer(den)).numer().clone();
    let g = x.gcd(&y);
    Some((x / &g, y / &g))
}

impl fmt::Debug for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<Point2>,
}

impl Serialize for RationalPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolygonFile {
            vertices: self.vertices.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalPolygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = PolygonFile::deserialize(deserializer)?;
        RationalPolygon::make(&file.vertices).map_err(serde::de::Error::custom)
    }
}

/// Which endpoints of a segment belong to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closedness {
    Closed,
    /// `(u, v]`
    ExcludeStart,
    /// `[u, v)`
    ExcludeEnd,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub u: Point2,
    pub v: Point2,
    pub closedness: Closedness,
}

impl Segment {
    pub fn new(u: Point2, v: Point2, closedness: Closedness) -> Result<Self, Error> {
        if u == v {
            return Err(Error::DegenerateInput);
        }
        Ok(Segment { u, v, closedness })
    }

    pub fn closed(u: Point2, v: Point2) -> Result<Self, Error> {
        Self::new(u, v, Closedness::Closed)
    }

    pub fn excludes_start(&self) -> bool {
        matches!(self.closedness, Closedness::ExcludeStart | Closedness::Open)
    }

    pub fn excludes_end(&self) -> bool {
        matches!(self.closedness, Closedness::ExcludeEnd | Closedness::Open)
    }

    pub fn contains(&self, p: &Point2) -> bool {
        if !orient(&self.u, &self.v, p).is_zero() {
            return false;
        }
        let d = &self.v - &self.u;
        let t = (p - &self.u).dot(&d) / d.dot(&d);
        let lo_ok = if self.excludes_start() { t.is_positive() } else { !t.is_negative() };
        let hi_ok = if self.excludes_end() { t < Rational::one() } else { t <= Rational::one() };
        lo_ok && hi_ok
    }
}

/// Number of integers in `[lo, hi]` for rational bounds.
pub(crate) fn integers_between(lo: &Rational, hi: &Rational) -> BigInt {
    let count = hi.floor() - lo.ceil() + BigInt::one();
    if count.is_negative() {
        BigInt::zero()
    } else {
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::int(x, y)
    }

    #[test]
    fn hull_triangle() {
        let tri = RationalPolygon::make(&[p(0, 1), p(1, 0), p(0, 0)]).unwrap();
        assert_eq!(tri.vertices(), &[p(0, 0), p(1, 0), p(0, 1)]);
    }

    #[test]
    fn hull_drops_interior_and_edge_points() {
        let sq = RationalPolygon::make(&[
            p(0, 0),
            p(1, 0),
            p(1, 1),
            p(0, 1),
            pt((1, 2), (1, 2)),
            pt((1, 2), (0, 1)),
        ])
        .unwrap();
        assert_eq!(sq.vertices(), &[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
    }

    #[test]
    fn hull_quadrilateral_canonical_cycle() {
        let q = RationalPolygon::make(&[p(0, 0), p(2, 0), pt((1, 1), (1, 2)), pt((1, 1), (-1, 2))]).unwrap();
        assert_eq!(q.vertices(), &[p(0, 0), pt((1, 1), (-1, 2)), p(2, 0), pt((1, 1), (1, 2))]);
        let vs = q.vertices();
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                for k in (j + 1)..vs.len() {
                    assert!(orient(&vs[i], &vs[j], &vs[k]).is_positive());
                }
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(RationalPolygon::make(&[p(0, 0), p(1, 1), p(2, 2)]), Err(Error::DegenerateInput));
        assert_eq!(RationalPolygon::make(&[p(0, 0), p(0, 0), p(1, 1)]), Err(Error::DegenerateInput));
        assert_eq!(convex_hull(&[p(0, 0), p(2, 2), p(1, 1)]), Hull::Segment(p(0, 0), p(2, 2)));
        assert_eq!(convex_hull(&[]), Hull::Empty);
    }

    #[test]
    fn areas() {
        let sq = RationalPolygon::make(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert_eq!(sq.area(), Rational::one());
        let t = RationalPolygon::make(&[p(0, 0), p(2, 0), pt((1, 1), (1, 2))]).unwrap();
        assert_eq!(t.area(), Rational::frac(1, 2));
        let t = RationalPolygon::make(&[p(0, -1), pt((1, 3), (1, 3)), pt((-1, 3), (2, 3))]).unwrap();
        assert_eq!(t.area(), Rational::frac(1, 2));
    }

    #[test]
    fn dilation() {
        let sq = RationalPolygon::make(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert_eq!(sq.dilate(3), RationalPolygon::make(&[p(0, 0), p(3, 0), p(3, 3), p(0, 3)]).unwrap());
        assert_eq!(sq.dilate(1), sq);
        let t = RationalPolygon::make(&[p(0, 0), p(1, 0), pt((0, 1), (1, 2))]).unwrap();
        assert_eq!(t.dilate(2), RationalPolygon::make(&[p(0, 0), p(2, 0), p(0, 1)]).unwrap());
    }

    #[test]
    fn locate_examples() {
        let sq = RationalPolygon::make(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert_eq!(sq.locate(&pt((1, 2), (1, 2))), Location::Interior);
        assert_eq!(sq.locate(&pt((1, 1), (1, 2))), Location::Boundary);
        assert_eq!(sq.locate(&p(2, 0)), Location::Outside);
        let q = RationalPolygon::make(&[p(0, 0), p(2, 0), pt((1, 1), (1, 2)), pt((1, 1), (-1, 2))]).unwrap();
        assert_eq!(q.locate(&p(1, 0)), Location::Interior);
    }

    #[test]
    fn from_cycle_rejects_reflex_and_clockwise() {
        let ccw = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert!(RationalPolygon::from_ccw_cycle(&ccw).is_ok());
        let cw: Vec<_> = ccw.iter().rev().cloned().collect();
        assert_eq!(RationalPolygon::from_ccw_cycle(&cw), Err(Error::NotConvex));
        let dart = [p(0, 0), p(2, 0), p(1, 1), p(2, 2), p(0, 2)];
        assert_eq!(RationalPolygon::from_ccw_cycle(&dart), Err(Error::NotConvex));
        // collinear midpoint is dropped
        let with_mid = [p(0, 0), p(1, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert_eq!(RationalPolygon::from_ccw_cycle(&with_mid).unwrap().len(), 4);
        // a cycle winding twice has only left turns but is not convex
        let star = [p(2, 0), p(0, 2), p(-2, 0), p(0, -2)];
        let twice: Vec<_> = star.iter().chain(star.iter()).cloned().collect();
        assert_eq!(RationalPolygon::from_ccw_cycle(&twice), Err(Error::NotConvex));
    }

    #[test]
    fn edge_lines_have_primitive_outer_normals() {
        let t = RationalPolygon::make(&[p(0, -1), pt((1, 3), (1, 3)), pt((-1, 3), (2, 3))]).unwrap();
        for line in t.edge_lines() {
            assert_eq!(line.offset, Rational::one());
        }
        let normals: Vec<_> = t.edge_lines().iter().map(|l| l.normal_point()).collect();
        assert!(normals.contains(&p(4, -1)));
        assert!(normals.contains(&p(1, 2)));
        assert!(normals.contains(&p(-5, -1)));
    }

    #[test]
    fn json_accepts_unreduced_and_canonicalizes() {
        let json = r#"{"vertices": [["2/4","0"],["0","3/3"],["0","0"]]}"#;
        let t: RationalPolygon = serde_json::from_str(json).unwrap();
        assert_eq!(t.vertices(), &[p(0, 0), pt((1, 2), (0, 1)), p(0, 1)]);
        let out = serde_json::to_string(&t).unwrap();
        assert_eq!(out, r#"{"vertices":[["0","0"],["1/2","0"],["0","1"]]}"#);
    }

    #[test]
    fn segment_membership_respects_closedness() {
        let s = Segment::new(pt((1, 3), (0, 1)), p(1, 0), Closedness::ExcludeStart).unwrap();
        assert!(!s.contains(&pt((1, 3), (0, 1))));
        assert!(s.contains(&p(1, 0)));
        assert!(s.contains(&pt((1, 2), (0, 1))));
        assert!(!s.contains(&p(2, 0)));
    }
}
