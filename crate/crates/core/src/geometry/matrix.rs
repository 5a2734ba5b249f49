use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::rational::Rational;

/// 2×2 rational matrix, optionally carrying a translation (`x ↦ Mx + t`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub entries: [[Rational; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Point2>,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 {
            entries: [[a, b], [c, d]],
            translation: None,
        }
    }

    pub fn int(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::int(1, 0, 0, 1)
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &Point2, v: &Point2) -> Self {
        Mat2::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    /// `A^a = [[1, a], [0, 1]]`.
    pub fn gen_a(a: &Rational) -> Self {
        Mat2::new(Rational::one(), a.clone(), Rational::zero(), Rational::one())
    }

    /// `B = [[1, 0], [-1, 1]]`.
    pub fn gen_b() -> Self {
        Mat2::int(1, 0, -1, 1)
    }

    pub fn with_translation(mut self, t: Point2) -> Self {
        self.translation = if t.is_zero() { None } else { Some(t) };
        self
    }

    pub fn det(&self) -> Rational {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }

    pub fn linear_part(&self) -> Mat2 {
        Mat2 {
            entries: self.entries.clone(),
            translation: None,
        }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let [[a, b], [c, d]] = &self.entries;
        let q = Point2::new(a * &p.x + b * &p.y, c * &p.x + d * &p.y);
        match &self.translation {
            Some(t) => &q + t,
            None => q,
        }
    }

    /// Panics on a singular matrix.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        assert!(!det.is_zero(), "singular matrix");
        let [[a, b], [c, d]] = &self.entries;
        let inv = Mat2::new(d / &det, -(b / &det), -(c / &det), a / &det);
        match &self.translation {
            Some(t) => {
                let back = inv.apply(t);
                inv.with_translation(-&back)
            }
            None => inv,
        }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Mat2 {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut acc = Mat2::identity();
        for _ in 0..exp.unsigned_abs() {
            acc = &base * &acc;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(Rational::is_integer)
            && self.translation.as_ref().is_none_or(Point2::is_lattice)
    }

    /// Integer entries and determinant +1.
    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.det() == Rational::one()
    }

    /// Integer entries, determinant ±1 and integral translation.
    pub fn is_lattice_automorphism(&self) -> bool {
        let det = self.det();
        self.is_integral() && (det == Rational::one() || det == -Rational::one())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    /// Composition `self ∘ rhs`.
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = &self.entries;
        let [[e, f], [g, h]] = &rhs.entries;
        let linear = Mat2::new(
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
        );
        let shift = match (&rhs.translation, &self.translation) {
            (None, None) => return linear,
            (Some(t), _) => self.apply(t),
            (None, Some(t)) => t.clone(),
        };
        linear.with_translation(shift)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")?;
        if let Some(t) = &self.translation {
            write!(f, " + {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_relations() {
        let a = Mat2::gen_a(&Rational::one());
        let b = Mat2::gen_b();
        assert_eq!(&(&a * &b) * &a, &(&b * &a) * &b);
        assert!((&a * &b).pow(6).is_identity());
        assert!(!(&a * &b).pow(3).is_identity());
    }

    #[test]
    fn affine_inverse_roundtrip() {
        let m = Mat2::int(2, 1, 1, 1).with_translation(Point2::int(3, -1));
        let p = Point2::int(5, 7);
        assert_eq!(m.inverse().apply(&m.apply(&p)), p);
        assert!((&m * &m.inverse()).is_identity());
        assert!(m.is_lattice_automorphism());
    }

    #[test]
    fn composition_order() {
        let shift = Mat2::identity().with_translation(Point2::int(1, 0));
        let swap = Mat2::int(0, 1, 1, 0);
        let p = Point2::int(2, 5);
        // swap ∘ shift
        assert_eq!((&swap * &shift).apply(&p), Point2::int(5, 3));
        assert_eq!((&shift * &swap).apply(&p), Point2::int(6, 2));
    }
}
