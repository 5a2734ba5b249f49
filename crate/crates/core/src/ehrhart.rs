//! Ehrhart quasi-polynomials of rational polygons.
//!
//! A quasi-polynomial is stored as one coefficient table per degree, each
//! indexed by the residue of `n` modulo the fitting period `D`. For a polygon
//! `D` is the lcm of the vertex denominators; the minimal periods of the
//! coefficient functions divide it, so fitting on residues mod `D` is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Hull, Rational, RationalPolygon};
use crate::lattice::{boundary_interior, ColumnKernel};

/// `L(n) = c0[n mod D] + c1[n mod D]·n + c2[n mod D]·n²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub c0: Vec<Rational>,
    pub c1: Vec<Rational>,
    pub c2: Vec<Rational>,
}

impl QuasiPolynomial {
    pub fn tables(&self) -> [&[Rational]; 3] {
        [&self.c0, &self.c1, &self.c2]
    }

    pub fn coefficient(&self, degree: usize, n: u64) -> &Rational {
        &self.tables()[degree][(n % self.period) as usize]
    }

    pub fn evaluate(&self, n: u64) -> Rational {
        let r = (n % self.period) as usize;
        let n = Rational::integer(n);
        &self.c0[r] + &self.c1[r] * &n + &self.c2[r] * &n * &n
    }

    /// True when every table is constant, i.e. the quasi-polynomial is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.tables().iter().all(|t| minimal_period(t) == 1)
    }
}

/// Smallest divisor `s` of `table.len()` such that the table is `s`-periodic.
pub fn minimal_period(table: &[Rational]) -> u64 {
    let d = table.len();
    (1..=d)
        .filter(|&s| d.is_multiple_of(s))
        .find(|&s| (0..d).all(|i| table[i] == table[(i + s) % d]))
        .unwrap_or(d) as u64
}

/// Solves the Vandermonde system `Σ_k c_k·x_i^k = y_i` exactly.
fn solve_vandermonde(xs: &[u64], ys: &[i64]) -> Vec<Rational> {
    let m = xs.len();
    let mut rows: Vec<Vec<Rational>> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let mut row: Vec<Rational> = (0..m as i32).map(|k| Rational::integer(x).pow(k)).collect();
            row.push(Rational::integer(y));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero()).expect("distinct nodes");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        let pivot_row: Vec<Rational> = rows[col].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &(&f * p);
                }
            }
        }
        rows[col] = pivot_row;
    }
    rows.into_iter().map(|mut r| r.pop().unwrap()).collect()
}

/// Fits a quasi-polynomial of the given degree (≤ 2) and period to a counting
/// function.
///
/// Residue `ρ` is interpolated through `n = ρ', ρ'+D, …` with `ρ' = ρ` for
/// `ρ ≥ 1` and `ρ' = D` for `ρ = 0`; the fit is then checked against every
/// `n` in the next band of length `D`.
pub fn fit_quasi_polynomial(period: u64, degree: usize, counts: impl Fn(u64) -> i64) -> Result<QuasiPolynomial> {
    assert!(period >= 1 && degree <= 2);
    let d = period;
    let samples = (degree + 2) as u64 * d;
    let values: Vec<i64> = (1..=samples).map(&counts).collect();
    let value = |n: u64| values[(n - 1) as usize];
    let mut tables: Vec<Vec<Rational>> = (0..3).map(|_| Vec::with_capacity(d as usize)).collect();
    for rho in 0..d {
        let start = if rho == 0 { d } else { rho };
        let xs: Vec<u64> = (0..=degree as u64).map(|k| start + k * d).collect();
        let ys: Vec<i64> = xs.iter().map(|&x| value(x)).collect();
        let mut coeffs = solve_vandermonde(&xs, &ys);
        coeffs.resize(3, Rational::zero());
        for (k, c) in coeffs.into_iter().enumerate() {
            tables[k].push(c);
        }
    }
    let c2 = tables.pop().unwrap();
    let c1 = tables.pop().unwrap();
    let c0 = tables.pop().unwrap();
    let qp = QuasiPolynomial { period: d, c0, c1, c2 };
    for n in (degree as u64 + 1) * d + 1..=samples {
        if qp.evaluate(n) != Rational::integer(value(n)) {
            return Err(Error::FitVerificationFailure { n });
        }
    }
    Ok(qp)
}

fn fitting_period(polygon: &RationalPolygon) -> u64 {
    polygon
        .denominator()
        .to_u64()
        .expect("vertex denominators fit in u64")
}

/// Ehrhart quasi-polynomial of a polygon.
///
/// Fails with `FitVerificationFailure` if the verification band disagrees or
/// the quadratic coefficient is not the constant area (`n = 0` in that case).
pub fn ehrhart_qp(polygon: &RationalPolygon) -> Result<QuasiPolynomial> {
    let d = fitting_period(polygon);
    let kernel = ColumnKernel::new(polygon);
    let qp = fit_quasi_polynomial(d, 2, |n| kernel.count(n) as i64)?;
    let area = polygon.area();
    if qp.c2.iter().any(|c| *c != area) {
        return Err(Error::FitVerificationFailure { n: 0 });
    }
    Ok(qp)
}

/// Minimal periods `(s0, s1, s2)` of the coefficient functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSequence {
    pub s: [u64; 3],
    pub quasi_period: u64,
}

pub fn period_sequence(qp: &QuasiPolynomial) -> PeriodSequence {
    let s = qp.tables().map(minimal_period);
    let quasi_period = s.iter().fold(1u64, |acc, x| acc.lcm(x));
    PeriodSequence { s, quasi_period }
}

/// `j_i`: least dilation making every `i`-face's affine span meet the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSequence {
    pub j: [u64; 3],
}

pub fn index_sequence(polygon: &RationalPolygon) -> IndexSequence {
    let j0 = fitting_period(polygon);
    // ⟨ν, x⟩ = c with ν primitive meets ℤ² exactly when c ∈ ℤ
    let j1 = polygon
        .edge_lines()
        .iter()
        .fold(BigInt::one(), |acc, line| acc.lcm(line.offset.denom()))
        .to_u64()
        .expect("edge denominators fit in u64");
    IndexSequence { j: [j0, j1, 1] }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipReport {
    pub is_pip: bool,
    pub quasi_period: u64,
    pub interior: u64,
    pub boundary: u64,
    /// `area − (I + b/2 − 1)`.
    pub pick_defect: Rational,
    /// `b(nP) = n·b(P)` for every `n ≤ 2D`.
    pub boundary_scaling_ok: bool,
}

pub fn pick_defect(polygon: &RationalPolygon) -> Rational {
    let counts = boundary_interior(polygon);
    let pick = Rational::integer(counts.interior) + Rational::frac(counts.boundary as i64, 2) - Rational::one();
    polygon.area() - pick
}

pub fn boundary_scales_linearly(polygon: &RationalPolygon, max_n: u64) -> bool {
    let b = boundary_interior(polygon).boundary;
    (1..=max_n).all(|n| boundary_interior(&polygon.dilate(n)).boundary == n * b)
}

pub fn pip_report(polygon: &RationalPolygon) -> Result<PipReport> {
    let periods = period_sequence(&ehrhart_qp(polygon)?);
    let counts = boundary_interior(polygon);
    Ok(PipReport {
        is_pip: periods.quasi_period == 1,
        quasi_period: periods.quasi_period,
        interior: counts.interior,
        boundary: counts.boundary,
        pick_defect: pick_defect(polygon),
        boundary_scaling_ok: boundary_scales_linearly(polygon, 2 * fitting_period(polygon)),
    })
}

/// Whether `(I, b)` is realized by an integral polygon: `b ≥ 3` and either
/// `I = 0`, `(I, b) = (1, 9)` or `b ≤ 2I + 6`.
///
/// With `allow_pip_extension`, the pairs `b ∈ {1, 2}`, `I ≥ 1` realized by
/// nonintegral pseudo-integral polygons are accepted as well.
pub fn scott_admissible(interior: u64, boundary: u64, allow_pip_extension: bool) -> bool {
    let integral = boundary >= 3 && (interior == 0 || (interior, boundary) == (1, 9) || boundary <= 2 * interior + 6);
    integral || (allow_pip_extension && interior >= 1 && (boundary == 1 || boundary == 2))
}

/// Closed-form quasi-polynomials of `ℓ = [0, 1/s]` and of the rectangle `ℓ × [0, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub segment_qp: QuasiPolynomial,
    pub rectangle_qp: QuasiPolynomial,
}

/// `c_{ℓ,0}(n) = ⌊n/s⌋ − n/s + 1`, tabulated by residue.
pub fn segment_constant_table(s: u64) -> Vec<Rational> {
    (0..s)
        .map(|rho| {
            let n = Rational::integer(rho);
            Rational::integer(rho / s) - n / Rational::integer(s) + Rational::one()
        })
        .collect()
}

pub fn closed_forms(s: u64, m: u64) -> Result<ClosedForms> {
    if s == 0 || m == 0 {
        return Err(Error::InvalidParameter("s and m must be positive".into()));
    }
    let inv_s = Rational::frac(1, s as i64);
    let c0 = segment_constant_table(s);
    let segment_qp = QuasiPolynomial {
        period: s,
        c0: c0.clone(),
        c1: vec![inv_s.clone(); s as usize],
        c2: vec![Rational::zero(); s as usize],
    };
    let m_r = Rational::integer(m);
    let rectangle_qp = QuasiPolynomial {
        period: s,
        c1: c0.iter().map(|c| &m_r * c + &inv_s).collect(),
        c0,
        c2: vec![&m_r * &inv_s; s as usize],
    };
    Ok(ClosedForms {
        segment_qp,
        rectangle_qp,
    })
}

/// `s_i | j_i` for `i = 0, 1, 2`.
pub fn mcmullen_check(polygon: &RationalPolygon) -> Result<bool> {
    let s = period_sequence(&ehrhart_qp(polygon)?).s;
    let j = index_sequence(polygon).j;
    Ok(s.iter().zip(j).all(|(s, j)| j % s == 0))
}

/// If the integral hull of `P` has an interior lattice point, checks that
/// `(I_P, b_P) = (1, 9)` or `b_P ≤ 2·I_P + 6`; vacuously true otherwise.
pub fn integral_hull_proposition_check(polygon: &RationalPolygon) -> bool {
    let hull = match polygon.integral_hull() {
        Hull::Polygon(h) => h,
        _ => return true,
    };
    if boundary_interior(&hull).interior == 0 {
        return true;
    }
    let counts = boundary_interior(polygon);
    (counts.interior, counts.boundary) == (1, 9) || counts.boundary <= 2 * counts.interior + 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pt, Point2};
    use crate::lattice::oracle_count;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::int(x, y)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn unit_triangle_polynomial() {
        let t = RationalPolygon::make(&[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        let qp = ehrhart_qp(&t).unwrap();
        assert_eq!(qp.period, 1);
        assert_eq!((qp.c0[0].clone(), qp.c1[0].clone(), qp.c2[0].clone()), (r(1, 1), r(3, 2), r(1, 2)));
        assert_eq!(period_sequence(&qp), PeriodSequence { s: [1, 1, 1], quasi_period: 1 });
    }

    #[test]
    fn half_height_triangle() {
        let t = RationalPolygon::make(&[p(0, 0), p(1, 0), pt((0, 1), (1, 2))]).unwrap();
        let qp = ehrhart_qp(&t).unwrap();
        assert_eq!(qp.period, 2);
        assert_eq!(qp.c2, vec![r(1, 4), r(1, 4)]);
        assert_eq!(qp.c1, vec![r(1, 1), r(1, 1)]);
        assert_eq!(qp.c0, vec![r(1, 1), r(3, 4)]);
        assert_eq!(period_sequence(&qp).s, [2, 1, 1]);
        assert_eq!(index_sequence(&t).j, [2, 1, 1]);
        assert!(mcmullen_check(&t).unwrap());
        assert!(!pip_report(&t).unwrap().is_pip);
    }

    #[test]
    fn thin_quadrilateral_is_pip() {
        let q = RationalPolygon::make(&[p(0, 0), p(2, 0), pt((1, 1), (1, 2)), pt((1, 1), (-1, 2))]).unwrap();
        let qp = ehrhart_qp(&q).unwrap();
        assert!(qp.is_polynomial());
        for n in 1..=10 {
            assert_eq!(qp.evaluate(n), Rational::integer(n * n + n + 1));
        }
        let report = pip_report(&q).unwrap();
        assert!(report.is_pip);
        assert!(report.pick_defect.is_zero());
        assert!(report.boundary_scaling_ok);
        assert_eq!(index_sequence(&q).j, [2, 1, 1]);
    }

    #[test]
    fn index_sequence_with_rational_edge() {
        let rect = RationalPolygon::make(&[p(0, 0), p(1, 0), pt((1, 1), (1, 2)), pt((0, 1), (1, 2))]).unwrap();
        assert_eq!(index_sequence(&rect).j, [2, 2, 1]);
        let sq = RationalPolygon::make(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert_eq!(index_sequence(&sq).j, [1, 1, 1]);
    }

    #[test]
    fn fit_reproduces_oracle() {
        let t = RationalPolygon::make(&[pt((-2, 3), (1, 5)), pt((7, 4), (-1, 2)), pt((3, 2), (9, 5)), pt((0, 1), (2, 1))]).unwrap();
        let qp = ehrhart_qp(&t).unwrap();
        for n in 1..=4 * qp.period {
            assert_eq!(qp.evaluate(n), Rational::integer(oracle_count(&t, n)));
        }
        assert!(mcmullen_check(&t).unwrap());
    }

    #[test]
    fn fit_detects_bad_counts() {
        // n² for n ≤ 3, then off by one: not a period-1 quadratic
        let err = fit_quasi_polynomial(1, 2, |n| (n * n + (n > 3) as u64) as i64).unwrap_err();
        assert_eq!(err, Error::FitVerificationFailure { n: 4 });
    }

    #[test]
    fn scott_predicate_examples() {
        assert!(scott_admissible(0, 3, false));
        assert!(!scott_admissible(1, 10, false));
        assert!(scott_admissible(1, 9, false));
        assert!(scott_admissible(3, 1, true));
        assert!(!scott_admissible(3, 1, false));
        assert!(!scott_admissible(0, 2, true));
        assert!(!scott_admissible(0, 1, true));
        assert!(!scott_admissible(4, 0, true));
        assert!(scott_admissible(2, 10, false));
    }

    #[test]
    fn closed_form_values() {
        let cf = closed_forms(1, 1).unwrap();
        for n in 1..=5 {
            assert_eq!(cf.segment_qp.evaluate(n), Rational::integer(n + 1));
        }
        assert_eq!(closed_forms(3, 1).unwrap().segment_qp.evaluate(1), Rational::one());
        assert_eq!(closed_forms(2, 1).unwrap().rectangle_qp.evaluate(1), Rational::integer(2));
        assert_eq!(closed_forms(0, 1), Err(Error::InvalidParameter("s and m must be positive".into())));
    }

    #[test]
    fn rectangle_closed_form_matches_counts() {
        for s in 1..=6u64 {
            for m in 1..=4u64 {
                let rect = RationalPolygon::make(&[
                    p(0, 0),
                    pt((1, s as i64), (0, 1)),
                    pt((1, s as i64), (m as i64, 1)),
                    p(0, m as i64),
                ])
                .unwrap();
                let cf = closed_forms(s, m).unwrap();
                assert_eq!(ehrhart_qp(&rect).unwrap(), cf.rectangle_qp);
                assert_eq!(minimal_period(&cf.rectangle_qp.c1), s);
            }
        }
    }

    #[test]
    fn proposition_vacuous_for_segment_hull() {
        let t = RationalPolygon::make(&[p(0, -1), pt((1, 3), (1, 3)), pt((-1, 3), (2, 3))]).unwrap();
        assert!(matches!(t.integral_hull(), Hull::Segment(..)));
        assert!(integral_hull_proposition_check(&t));
        let sq = RationalPolygon::make(&[p(-1, -1), p(1, -1), p(1, 1), p(-1, 1)]).unwrap();
        assert!(integral_hull_proposition_check(&sq));
    }

    #[test]
    fn qp_json_shape() {
        let t = RationalPolygon::make(&[p(0, 0), p(1, 0), pt((0, 1), (1, 2))]).unwrap();
        let json = serde_json::to_value(ehrhart_qp(&t).unwrap()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"period": 2, "c0": ["1", "3/4"], "c1": ["1", "1"], "c2": ["1/4", "1/4"]})
        );
    }
}
