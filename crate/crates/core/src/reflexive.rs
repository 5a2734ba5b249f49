//! Polar duality, reflexive and pseudo-reflexive polygons, and their
//! description by words in the generators
//! `A^a = [[1, a], [0, 1]]` and `B = [[1, 0], [−1, 1]]` of `SL₂(ℚ)`.
//!
//! A word `B^{b_n}A^{a_n} ⋯ B^{b_1}A^{a_1}` is stored with `letters[0] =
//! (a_1, b_1)`. Its path starts at `v_0 = (1, 0)` with direction
//! `d_0 = (0, 1)`, and each letter updates the stacked rows `[v; d]` by left
//! multiplication: `v_i = v_{i−1} + a_i·d_{i−1}`, `d_i = d_{i−1} − b_i·v_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ehrhart::{ehrhart_qp, period_sequence};
use crate::error::{Error, Result};
use crate::geometry::{orient, primitive_direction, Location, Mat2, Point2, Rational, RationalPolygon};
use crate::lattice::boundary_interior;
use crate::pz_morphism::lattice_length;
use crate::search::{box_points, for_each_lattice_polygon, SearchLimits};

fn require_origin_interior(polygon: &RationalPolygon) -> Result<()> {
    if polygon.locate(&Point2::origin()) != Location::Interior {
        return Err(Error::OriginNotInterior);
    }
    Ok(())
}

/// `{y : ⟨x, y⟩ ≤ 1 for all x ∈ P}`; the edge `⟨ν, x⟩ = c` of `P` becomes the vertex `ν/c`.
pub fn polar_dual(polygon: &RationalPolygon) -> Result<RationalPolygon> {
    require_origin_interior(polygon)?;
    let vertices: Vec<Point2> = polygon
        .edge_lines()
        .iter()
        .map(|line| line.normal_point().scale(&line.offset.recip()))
        .collect();
    RationalPolygon::from_ccw_cycle(&vertices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexivityReport {
    pub reflexive: bool,
    pub pseudo_reflexive: bool,
    /// `b_P + b_{P∨} = 12`.
    pub twelve: bool,
    pub boundary: u64,
    pub dual_boundary: u64,
}

pub fn reflexivity_report(polygon: &RationalPolygon) -> Result<ReflexivityReport> {
    let dual = polar_dual(polygon)?;
    let is_pip = period_sequence(&ehrhart_qp(polygon)?).quasi_period == 1;
    let boundary = boundary_interior(polygon).boundary;
    let dual_boundary = boundary_interior(&dual).boundary;
    Ok(ReflexivityReport {
        reflexive: polygon.is_integral() && dual.is_integral(),
        pseudo_reflexive: is_pip && dual.is_integral(),
        twelve: boundary + dual_boundary == 12,
        boundary,
        dual_boundary,
    })
}

/// The letter pair `(a_i, b_i)` standing for `B^{b_i}A^{a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub a: Rational,
    pub b: u64,
}

impl Letter {
    pub fn new(a: Rational, b: u64) -> Self {
        Letter { a, b }
    }

    /// `B^b A^a`.
    pub fn matrix(&self) -> Mat2 {
        &Mat2::gen_b().pow(self.b as i64) * &Mat2::gen_a(&self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    /// `letters[i]` is `(a_{i+1}, b_{i+1})`; the rightmost factor comes first.
    pub letters: Vec<Letter>,
}

pub const WORD_ORDER: &str = "right-to-left";

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GeneratorWord { letters }
    }

    /// `n` copies of the same letter.
    pub fn repeated(a: Rational, b: u64, n: usize) -> Self {
        GeneratorWord::new(vec![Letter::new(a, b); n])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn sum_a(&self) -> Rational {
        self.letters.iter().map(|l| l.a.clone()).sum()
    }

    pub fn sum_b(&self) -> u64 {
        self.letters.iter().map(|l| l.b).sum()
    }

    /// Checks `a_i > 0`, `b_i ≥ 1`, `Σ a_i ∈ ℤ` and `den(a_1 + ⋯ + a_i)² | b_i`.
    pub fn validate(&self) -> Result<()> {
        if self.letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let mut partial = Rational::zero();
        for (i, l) in self.letters.iter().enumerate() {
            if !l.a.is_positive() || l.b == 0 {
                return Err(Error::InvalidWord(format!("letter {} is not positive", i + 1)));
            }
            partial += &l.a;
            let den = partial.denom();
            if !(BigInt::from(l.b) % (den * den)).is_zero() {
                return Err(Error::InvalidWord(format!(
                    "b_{} = {} is not divisible by {}",
                    i + 1,
                    l.b,
                    den * den
                )));
            }
        }
        if !partial.is_integer() {
            return Err(Error::InvalidWord(format!("sum of a_i is {partial}, not an integer")));
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().rev().map(|l| format!("B^{}A^{}", l.b, l.a)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct WordFile {
    order: String,
    letters: Vec<Letter>,
}

// JSON lists letters in written order, so `(a_1, b_1)` comes last.
impl Serialize for GeneratorWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WordFile {
            order: WORD_ORDER.to_string(),
            letters: self.letters.iter().rev().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratorWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = WordFile::deserialize(deserializer)?;
        if file.order != WORD_ORDER {
            return Err(serde::de::Error::custom(format!(
                "unsupported letter order {:?}, expected {WORD_ORDER:?}",
                file.order
            )));
        }
        Ok(GeneratorWord::new(file.letters.into_iter().rev().collect()))
    }
}

/// `B^{b_n}A^{a_n} ⋯ B^{b_1}A^{a_1}`.
pub fn word_product(word: &GeneratorWord) -> Mat2 {
    word.letters
        .iter()
        .fold(Mat2::identity(), |acc, letter| &letter.matrix() * &acc)
}

/// Winding number of the closed path `p_0 p_1 ⋯ p_{m−1} p_0` about the origin.
pub fn winding_number(path: &[Point2]) -> Result<i64> {
    let origin = Point2::origin();
    let m = path.len();
    let mut winding = 0;
    for i in 0..m {
        let (a, b) = (&path[i], &path[(i + 1) % m]);
        let turn = orient(a, b, &origin);
        if turn.is_zero() && on_segment(a, b, &origin) {
            return Err(Error::OriginOnPath);
        }
        // crossings of the ray {(t, 0) : t > 0}
        if !a.y.is_positive() && b.y.is_positive() && turn.is_positive() {
            winding += 1;
        } else if !b.y.is_positive() && a.y.is_positive() && turn.is_negative() {
            winding -= 1;
        }
    }
    Ok(winding)
}

fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let lo = |s: &Rational, t: &Rational| if s < t { s.clone() } else { t.clone() };
    let hi = |s: &Rational, t: &Rational| if s < t { t.clone() } else { s.clone() };
    lo(&a.x, &b.x) <= p.x && p.x <= hi(&a.x, &b.x) && lo(&a.y, &b.y) <= p.y && p.y <= hi(&a.y, &b.y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReconstruction {
    pub vertices: Vec<Point2>,
    pub directions: Vec<Point2>,
    pub winding: i64,
}

pub fn reconstruct_path(word: &GeneratorWord) -> Result<PathReconstruction> {
    word.validate()?;
    let mut v = Point2::int(1, 0);
    let mut d = Point2::int(0, 1);
    let mut vertices = Vec::with_capacity(word.len());
    let mut directions = Vec::with_capacity(word.len());
    for letter in &word.letters {
        vertices.push(v.clone());
        directions.push(d.clone());
        v = &v + &d.scale(&letter.a);
        d = &d - &v.scale(&Rational::integer(letter.b));
    }
    let winding = winding_number(&vertices)?;
    Ok(PathReconstruction {
        vertices,
        directions,
        winding,
    })
}

/// A word read off a polygon, with the lattice automorphism `frame` that
/// moves the chosen lattice vertex to `(1, 0)` and its outgoing edge onto
/// the direction `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractedWord {
    pub word: GeneratorWord,
    pub frame: Mat2,
    /// The polygon's vertices after `frame`, counterclockwise from `(1, 0)`.
    pub vertices: Vec<Point2>,
}

fn point_of(pair: (BigInt, BigInt)) -> Point2 {
    Point2::new(pair.0.into(), pair.1.into())
}

/// Reads the word of a (pseudo-)reflexive polygon.
///
/// `a_i` is the lattice length of the edge `v_{i−1}v_i`, and
/// `b_i = den(v_i)·b_i'` with `b_i'` the lattice length of the dual edge
/// whose outer normal is `v_i`; `den` is the lcm of the coordinate
/// denominators.
pub fn extract_word(polygon: &RationalPolygon) -> Result<ExtractedWord> {
    let dual = polar_dual(polygon)?;
    if !dual.is_integral() {
        return Err(Error::InvalidParameter("polar dual is not integral".into()));
    }
    let verts = polygon.vertices();
    let n = verts.len();
    let start = verts.iter().position(Point2::is_lattice).ok_or(Error::NoLatticeVertex)?;
    let edge = primitive_direction(&(&verts[(start + 1) % n] - &verts[start])).expect("distinct vertices");
    let frame = Mat2::from_columns(&verts[start], &point_of(edge)).inverse();
    debug_assert!(frame.is_unimodular());
    let normalized: Vec<Point2> = (0..n).map(|i| frame.apply(&verts[(start + i) % n])).collect();
    // edge j joins normalized[j] and normalized[j + 1]; its dual vertex is ν_j / c_j
    let dual_vertex = |j: usize| {
        let line = crate::geometry::edge_line(&normalized[j % n], &normalized[(j + 1) % n]);
        line.normal_point().scale(&line.offset.recip())
    };
    let mut letters = Vec::with_capacity(n);
    for i in 1..=n {
        let v = &normalized[i % n];
        let a = lattice_length(&(v - &normalized[i - 1]))?.lambda;
        let b_prime = lattice_length(&(&dual_vertex(i) - &dual_vertex(i - 1)))?.lambda;
        let b = Rational::integer(v.denominator()) * b_prime;
        let b = b
            .to_i64()
            .filter(|_| b.is_integer() && b.is_positive())
            .ok_or_else(|| Error::InvalidParameter(format!("b_{i} = {b} is not a positive integer")))?;
        letters.push(Letter::new(a, b as u64));
    }
    Ok(ExtractedWord {
        word: GeneratorWord::new(letters),
        frame,
        vertices: normalized,
    })
}

/// Canonical vertex sequence of a polygon up to linear `GL₂(ℤ)` maps.
///
/// Every vertex and both orientations give a candidate: the outgoing edge
/// is sent to the positive x-axis, then the remaining shear is fixed by
/// reducing the x-coordinate of the first vertex off that axis modulo its
/// height. The least candidate is the normal form.
pub fn linear_normal_form(polygon: &RationalPolygon) -> Vec<Point2> {
    let verts = polygon.vertices();
    let n = verts.len();
    let mut best: Option<Vec<Point2>> = None;
    for reversed in [false, true] {
        for i in 0..n {
            let seq: Vec<Point2> = (0..n)
                .map(|k| {
                    let idx = if reversed { (i + n - k) % n } else { (i + k) % n };
                    verts[idx].clone()
                })
                .collect();
            let (ex, ey) = primitive_direction(&(&seq[1] - &seq[0])).expect("distinct vertices");
            let g = ex.extended_gcd(&ey);
            debug_assert!(g.gcd.is_one());
            let m0 = Mat2::new(g.x.into(), g.y.into(), (-ey).into(), ex.into());
            let m = if reversed { &Mat2::int(1, 0, 0, -1) * &m0 } else { m0 };
            let mut image: Vec<Point2> = seq.iter().map(|p| m.apply(p)).collect();
            if let Some(p) = image.iter().find(|p| !p.y.is_zero()) {
                // shear (x, y) ↦ (x + t·y, y) with t chosen so x lands in [0, |y|)
                let steps = Rational::integer((&p.x / &p.y.abs()).floor());
                let t = if p.y.is_positive() { -steps } else { steps };
                let shear = Mat2::gen_a(&t);
                image = image.iter().map(|p| shear.apply(p)).collect();
            }
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.expect("polygon has vertices")
}

/// Integral polygons in `[−bound, bound]²` whose only interior lattice point
/// is the origin, one per `GL₂(ℤ)` class, in normal-form order.
pub fn reflexive_classes(bound: i64) -> Vec<RationalPolygon> {
    let range = (-bound, bound);
    let limits = SearchLimits {
        max_interior: 1,
        max_total: u64::MAX,
    };
    let mut classes = BTreeSet::new();
    let _ = for_each_lattice_polygon(&box_points(range, range), range, range, &limits, |v, c| {
        if c.interior == 1 && contains_origin_strictly(v) {
            let pts: Vec<Point2> = v.iter().map(|&(x, y)| Point2::int(x, y)).collect();
            let poly = RationalPolygon::make(&pts).expect("convex cycle");
            classes.insert(linear_normal_form(&poly));
        }
        ControlFlow::Continue(())
    });
    classes
        .into_iter()
        .map(|nf| RationalPolygon::make(&nf).expect("normal form is a polygon"))
        .collect()
}

fn contains_origin_strictly(ccw: &[(i64, i64)]) -> bool {
    let n = ccw.len();
    (0..n).all(|i| {
        let (a, b) = (ccw[i], ccw[(i + 1) % n]);
        a.0 * b.1 - a.1 * b.0 > 0
    })
}

/// True when some `GL₂(ℤ)` map sends one polygon onto the other.
pub fn linearly_equivalent(p: &RationalPolygon, q: &RationalPolygon) -> bool {
    p.len() == q.len() && linear_normal_form(p) == linear_normal_form(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::int(x, y)
    }

    fn poly(v: &[Point2]) -> RationalPolygon {
        RationalPolygon::make(v).unwrap()
    }

    fn example() -> RationalPolygon {
        poly(&[p(0, -1), pt((1, 3), (1, 3)), pt((-1, 3), (2, 3))])
    }

    fn diamond() -> RationalPolygon {
        poly(&[p(1, 0), p(0, 1), p(-1, 0), p(0, -1)])
    }

    #[test]
    fn dual_examples() {
        let square = poly(&[p(1, 1), p(-1, 1), p(-1, -1), p(1, -1)]);
        assert_eq!(polar_dual(&square).unwrap(), diamond());
        assert_eq!(polar_dual(&diamond()).unwrap(), square);
        let dual = polar_dual(&example()).unwrap();
        assert_eq!(dual, poly(&[p(4, -1), p(1, 2), p(-5, -1)]));
        assert_eq!(polar_dual(&dual).unwrap(), example());
        let off = poly(&[p(0, 0), p(1, 0), p(0, 1)]);
        assert_eq!(polar_dual(&off), Err(Error::OriginNotInterior));
    }

    #[test]
    fn reports() {
        let square = poly(&[p(1, 1), p(-1, 1), p(-1, -1), p(1, -1)]);
        let r = reflexivity_report(&square).unwrap();
        assert!(r.reflexive && r.pseudo_reflexive && r.twelve);
        assert_eq!((r.boundary, r.dual_boundary), (8, 4));
        let r = reflexivity_report(&example()).unwrap();
        assert!(!r.reflexive && r.pseudo_reflexive);
    }

    #[test]
    fn generator_relations() {
        let a = Mat2::gen_a(&Rational::one());
        let b = Mat2::gen_b();
        assert_eq!(&(&a * &b) * &a, &(&b * &a) * &b);
        assert!((&a * &b).pow(6).is_identity());
    }

    #[test]
    fn word_products_are_identity() {
        assert!(word_product(&GeneratorWord::repeated(Rational::one(), 2, 4)).is_identity());
        assert!(word_product(&GeneratorWord::repeated(Rational::frac(1, 3), 9, 3)).is_identity());
        assert!(!word_product(&GeneratorWord::repeated(Rational::one(), 2, 2)).is_identity());
    }

    #[test]
    fn validity_rules() {
        assert!(GeneratorWord::repeated(Rational::frac(1, 3), 9, 3).validate().is_ok());
        assert!(GeneratorWord::repeated(Rational::one(), 2, 4).validate().is_ok());
        assert!(GeneratorWord::repeated(Rational::frac(1, 3), 3, 3).validate().is_err());
        assert!(GeneratorWord::repeated(Rational::frac(1, 2), 4, 3).validate().is_err());
        assert!(GeneratorWord::new(vec![]).validate().is_err());
    }

    #[test]
    fn extract_examples() {
        let e = extract_word(&diamond()).unwrap();
        assert_eq!(e.word, GeneratorWord::repeated(Rational::one(), 2, 4));
        let e = extract_word(&example()).unwrap();
        assert_eq!(e.word, GeneratorWord::repeated(Rational::frac(1, 3), 9, 3));
        assert!(e.frame.is_unimodular());
    }

    #[test]
    fn reconstruction_closes_on_frame_image() {
        for poly in [diamond(), example()] {
            let e = extract_word(&poly).unwrap();
            let path = reconstruct_path(&e.word).unwrap();
            assert_eq!(path.vertices, e.vertices);
            assert_eq!(path.winding, 1);
            let rebuilt = RationalPolygon::make(&path.vertices).unwrap();
            assert!(linearly_equivalent(&rebuilt, &poly));
        }
    }

    #[test]
    fn diamond_word_path() {
        let path = reconstruct_path(&GeneratorWord::repeated(Rational::one(), 2, 4)).unwrap();
        assert_eq!(path.vertices, vec![p(1, 0), p(1, 1), p(-1, 0), p(-1, -1)]);
        assert_eq!(path.directions[0], p(0, 1));
        assert!(linearly_equivalent(&RationalPolygon::make(&path.vertices).unwrap(), &diamond()));
    }

    #[test]
    fn windings() {
        let sq = vec![p(1, 0), p(0, 1), p(-1, 0), p(0, -1)];
        assert_eq!(winding_number(&sq).unwrap(), 1);
        let twice: Vec<Point2> = sq.iter().chain(sq.iter()).cloned().collect();
        assert_eq!(winding_number(&twice).unwrap(), 2);
        let cw: Vec<Point2> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&cw).unwrap(), -1);
        assert_eq!(winding_number(&[p(1, 0), p(-1, 0), p(0, 1)]), Err(Error::OriginOnPath));
        assert_eq!(winding_number(&[p(1, 1), p(2, 1), p(1, 2)]).unwrap(), 0);
    }

    #[test]
    fn word_json_order() {
        let w = GeneratorWord::new(vec![Letter::new(Rational::frac(1, 3), 9), Letter::new(Rational::one(), 2)]);
        let json = serde_json::to_value(&w).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"order": "right-to-left", "letters": [{"a": "1", "b": 2}, {"a": "1/3", "b": 9}]})
        );
        let back: GeneratorWord = serde_json::from_value(json).unwrap();
        assert_eq!(back, w);
        let bad = serde_json::json!({"order": "left-to-right", "letters": []});
        assert!(serde_json::from_value::<GeneratorWord>(bad).is_err());
    }

    #[test]
    fn normal_form_invariance() {
        let g = Mat2::int(2, 1, 1, 1);
        let h = Mat2::int(0, 1, 1, 0);
        for poly in [example(), diamond(), poly(&[p(-1, -1), p(2, -1), p(-1, 2)])] {
            let nf = linear_normal_form(&poly);
            assert_eq!(linear_normal_form(&poly.transform(&g)), nf);
            assert_eq!(linear_normal_form(&poly.transform(&h)), nf);
        }
        let square = poly(&[p(1, 1), p(-1, 1), p(-1, -1), p(1, -1)]);
        assert!(!linearly_equivalent(&square, &diamond()));
    }
}
