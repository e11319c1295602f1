//! Arithmetic of the contraction parameter.
//!
//! A [`JScalar`] is a complex coefficient series in the parameter j,
//! truncated at a fixed order N: the ring C[j]/(j^{N+1}). The three
//! evaluations of j are quotients of that ring,
//!
//!   * classical  j = 1   — sum of all coefficients,
//!   * nilpotent  j = ι   — dual number, coefficients of order ≥ 2 dropped,
//!   * limit      j → 0   — constant coefficient only,
//!
//! and the nilpotent and limit evaluations are ring homomorphisms. The same
//! coefficient-vector arithmetic serves all four rings (graded, classical,
//! dual, limit); the rings differ only in the length of the vector and in
//! which element plays the role of j, so [`Ring`] is a small factory for
//! seeds rather than a second arithmetic.

use crate::coeff::{approx_eq_c64, q_int, Coeff, Q};
use crate::Error;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default truncation order; the constructions here never exceed j⁴.
pub const DEFAULT_TRUNC: usize = 4;

/// Evaluation of the contraction parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    /// j = 1: the standard (uncontracted) theory.
    Classical,
    /// j = ι with ι² = 0: dual-number contraction.
    #[serde(rename = "iota")]
    Nilpotent,
    /// j → 0: coefficient projection to order zero.
    Limit,
}

impl EvalMode {
    pub fn apply(&self, a: &JScalar) -> JScalar {
        match self {
            EvalMode::Classical => {
                let mut acc = Coeff::zero();
                for c in &a.coeffs {
                    acc = &acc + c;
                }
                JScalar { coeffs: vec![acc] }
            }
            EvalMode::Nilpotent => {
                let c0 = a.coeffs[0].clone();
                let c1 = a.coeffs.get(1).cloned().unwrap_or_else(Coeff::zero);
                JScalar { coeffs: vec![c0, c1] }
            }
            EvalMode::Limit => JScalar {
                coeffs: vec![a.coeffs[0].clone()],
            },
        }
    }

    /// Ring the evaluation lands in.
    pub fn ring(&self) -> Ring {
        match self {
            EvalMode::Classical => Ring::classical(),
            EvalMode::Nilpotent => Ring::dual(),
            EvalMode::Limit => Ring::limit(),
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalMode::Classical => write!(f, "classical"),
            EvalMode::Nilpotent => write!(f, "iota"),
            EvalMode::Limit => write!(f, "limit"),
        }
    }
}

/// Ambient scalar ring: fixes the truncation length and the value of j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring {
    trunc: usize,
    j_kind: JKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum JKind {
    Formal,
    One,
    Iota,
    Zero,
}

impl Ring {
    /// Graded ring C[j]/(j^{trunc+1}) with j kept formal.
    pub fn graded(trunc: usize) -> Ring {
        assert!(trunc >= 1, "graded ring needs truncation order >= 1");
        Ring {
            trunc,
            j_kind: JKind::Formal,
        }
    }

    /// Plain complex numbers with j = 1.
    pub fn classical() -> Ring {
        Ring {
            trunc: 0,
            j_kind: JKind::One,
        }
    }

    /// Dual numbers a + bι, ι² = 0.
    pub fn dual() -> Ring {
        Ring {
            trunc: 1,
            j_kind: JKind::Iota,
        }
    }

    /// Plain complex numbers with j = 0.
    pub fn limit() -> Ring {
        Ring {
            trunc: 0,
            j_kind: JKind::Zero,
        }
    }

    pub fn for_mode(mode: Option<EvalMode>, trunc: usize) -> Ring {
        match mode {
            None => Ring::graded(trunc),
            Some(m) => m.ring(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn zero(&self) -> JScalar {
        JScalar {
            coeffs: vec![Coeff::zero(); self.trunc + 1],
        }
    }

    pub fn one(&self) -> JScalar {
        self.scalar(Coeff::one())
    }

    pub fn scalar(&self, c: Coeff) -> JScalar {
        let mut v = vec![Coeff::zero(); self.trunc + 1];
        v[0] = c;
        JScalar { coeffs: v }
    }

    /// The contraction parameter of this ring.
    pub fn j(&self) -> JScalar {
        let mut v = vec![Coeff::zero(); self.trunc + 1];
        match self.j_kind {
            JKind::Formal | JKind::Iota => v[1] = Coeff::one(),
            JKind::One => v[0] = Coeff::one(),
            JKind::Zero => {}
        }
        JScalar { coeffs: v }
    }
}

/// Truncated complex power series in the contraction parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct JScalar {
    coeffs: Vec<Coeff>,
}

impl JScalar {
    pub fn from_coeffs(coeffs: Vec<Coeff>) -> JScalar {
        assert!(!coeffs.is_empty());
        JScalar { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Coefficient of j^k (zero beyond the truncation).
    pub fn order(&self, k: usize) -> Coeff {
        self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_exact)
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(Coeff::norm).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> JScalar {
        JScalar {
            coeffs: self.coeffs.iter().map(Coeff::conj).collect(),
        }
    }

    fn check_len(&self, rhs: &JScalar) -> Result<(), Error> {
        if self.coeffs.len() != rhs.coeffs.len() {
            Err(Error::TruncationMismatch(self.trunc(), rhs.trunc()))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, rhs: &JScalar) -> Result<JScalar, Error> {
        self.check_len(rhs)?;
        Ok(JScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_mul(&self, rhs: &JScalar) -> Result<JScalar, Error> {
        self.check_len(rhs)?;
        let n = self.coeffs.len();
        let mut out = vec![Coeff::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + k] = &out[i + k] + &(a * b);
            }
        }
        Ok(JScalar { coeffs: out })
    }

    pub fn mul_coeff(&self, c: &Coeff) -> JScalar {
        JScalar {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse by recursive series inversion.
    ///
    /// Mirrors the division rules of the dual-number calculus: a series with
    /// vanishing constant term (a pure multiple of j, like ι itself) has no
    /// inverse in the ring.
    pub fn invert(&self) -> Result<JScalar, Error> {
        let b0 = self.coeffs[0].inv().ok_or(Error::NotInvertible)?;
        let n = self.coeffs.len();
        let mut out = vec![Coeff::zero(); n];
        out[0] = b0.clone();
        for k in 1..n {
            let mut acc = Coeff::zero();
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -(&b0 * &acc);
        }
        Ok(JScalar { coeffs: out })
    }

    /// Divide by j^k; fails unless all coefficients below order k vanish
    /// (to `tol`, relatively, for float coefficients).
    pub fn peel_j(&self, k: usize, tol: f64) -> Result<JScalar, Error> {
        let scale = self.max_norm().max(1.0);
        for (i, c) in self.coeffs.iter().take(k).enumerate() {
            let ok = match c {
                Coeff::Exact(e) => e.is_zero(),
                Coeff::Approx(z) => z.norm() <= tol * scale,
            };
            if !ok {
                return Err(Error::GradingViolation(format!(
                    "coefficient of j^{i} is nonzero; cannot divide by j^{k}"
                )));
            }
        }
        let mut coeffs: Vec<Coeff> = self.coeffs[k.min(self.coeffs.len() - 1)..].to_vec();
        if k >= self.coeffs.len() {
            coeffs = vec![Coeff::zero()];
        }
        // keep the original truncation length
        while coeffs.len() < self.coeffs.len() {
            coeffs.push(Coeff::zero());
        }
        Ok(JScalar { coeffs })
    }

    pub fn eval(&self, mode: EvalMode) -> JScalar {
        mode.apply(self)
    }

    pub fn eq_exact(&self, rhs: &JScalar) -> bool {
        self.coeffs.len() == rhs.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .all(|(a, b)| (a - b).is_zero() || a.eq_exact(b))
    }

    pub fn approx_eq(&self, rhs: &JScalar, tol: f64) -> bool {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        (0..n).all(|k| approx_eq_c64(self.order(k).to_c64(), rhs.order(k).to_c64(), tol))
    }

    /// Largest coefficient-wise deviation from `rhs`.
    pub fn deviation(&self, rhs: &JScalar) -> f64 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        (0..n)
            .map(|k| (self.order(k).to_c64() - rhs.order(k).to_c64()).norm())
            .fold(0.0, f64::max)
    }

    /// Compose the Taylor expansion of `f` with this series.
    ///
    /// Around a vanishing constant term the expansion coefficients are exact
    /// rationals and exact inputs stay exact; around a nonzero constant term
    /// the derivatives of sin/cos/exp are transcendental and the result
    /// falls to float coefficients. A length-one series therefore evaluates
    /// `f` honestly at its constant, which is what the classical ring needs.
    pub fn apply_taylor(&self, f: AnalyticFn) -> JScalar {
        let n = self.trunc();
        let a0 = self.coeffs[0].clone();
        let mut tilde = self.clone();
        tilde.coeffs[0] = Coeff::zero();

        let coeffs: Vec<Coeff> = if a0.is_zero() {
            (0..=n).map(|k| f.taylor_coeff_at_zero(k)).collect()
        } else {
            let c = a0.to_c64();
            (0..=n).map(|k| Coeff::from_c64(f.taylor_coeff_at(c, k))).collect()
        };

        let ring_len = self.coeffs.len();
        let mut acc = JScalar {
            coeffs: vec![Coeff::zero(); ring_len],
        };
        let mut power = JScalar {
            coeffs: {
                let mut v = vec![Coeff::zero(); ring_len];
                v[0] = Coeff::one();
                v
            },
        };
        for (k, ck) in coeffs.iter().enumerate() {
            if k > 0 {
                power = power.try_mul(&tilde).expect("same ring");
            }
            acc = acc.try_add(&power.mul_coeff(ck)).expect("same ring");
        }
        acc
    }
}

impl Add for &JScalar {
    type Output = JScalar;
    fn add(self, rhs: &JScalar) -> JScalar {
        self.try_add(rhs).expect("truncation order mismatch")
    }
}

impl Sub for &JScalar {
    type Output = JScalar;
    fn sub(self, rhs: &JScalar) -> JScalar {
        self.try_add(&-rhs.clone()).expect("truncation order mismatch")
    }
}

impl Mul for &JScalar {
    type Output = JScalar;
    fn mul(self, rhs: &JScalar) -> JScalar {
        self.try_mul(rhs).expect("truncation order mismatch")
    }
}

impl Add for JScalar {
    type Output = JScalar;
    fn add(self, rhs: JScalar) -> JScalar {
        &self + &rhs
    }
}

impl Sub for JScalar {
    type Output = JScalar;
    fn sub(self, rhs: JScalar) -> JScalar {
        &self - &rhs
    }
}

impl Mul for JScalar {
    type Output = JScalar;
    fn mul(self, rhs: JScalar) -> JScalar {
        &self * &rhs
    }
}

impl Neg for JScalar {
    type Output = JScalar;
    fn neg(self) -> JScalar {
        JScalar {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl fmt::Display for JScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})j")?,
                _ => write!(f, "({c})j^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Analytic functions admitted by the Taylor rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticFn {
    Sin,
    Cos,
    Exp,
}

impl AnalyticFn {
    /// f^{(k)}(0) / k! as an exact coefficient.
    fn taylor_coeff_at_zero(&self, k: usize) -> Coeff {
        let fact = factorial(k);
        match self {
            AnalyticFn::Exp => Coeff::from_rational(Q::one() / fact),
            AnalyticFn::Sin => {
                if k % 2 == 0 {
                    Coeff::zero()
                } else {
                    let sign = if (k - 1) / 2 % 2 == 0 { 1 } else { -1 };
                    Coeff::from_rational(q_int(sign) / fact)
                }
            }
            AnalyticFn::Cos => {
                if k % 2 == 1 {
                    Coeff::zero()
                } else {
                    let sign = if k / 2 % 2 == 0 { 1 } else { -1 };
                    Coeff::from_rational(q_int(sign) / fact)
                }
            }
        }
    }

    /// f^{(k)}(c) / k! numerically.
    fn taylor_coeff_at(&self, c: num_complex::Complex64, k: usize) -> num_complex::Complex64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let d = match self {
            AnalyticFn::Exp => c.exp(),
            AnalyticFn::Sin => match k % 4 {
                0 => c.sin(),
                1 => c.cos(),
                2 => -c.sin(),
                _ => -c.cos(),
            },
            AnalyticFn::Cos => match k % 4 {
                0 => c.cos(),
                1 => -c.sin(),
                2 => -c.cos(),
                _ => c.sin(),
            },
        };
        d / fact
    }
}

fn factorial(k: usize) -> Q {
    let mut f = Q::one();
    for i in 2..=k {
        f *= q_int(i as i64);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;

    fn g4() -> Ring {
        Ring::graded(4)
    }

    fn series(vals: &[i64]) -> JScalar {
        JScalar::from_coeffs(vals.iter().map(|&v| Coeff::from_int(v)).collect())
    }

    #[test]
    fn addition_is_coefficientwise() {
        // (1 + 2j) + (3 + j) = 4 + 3j
        let a = series(&[1, 2, 0, 0, 0]);
        let b = series(&[3, 1, 0, 0, 0]);
        assert!((a + b).eq_exact(&series(&[4, 3, 0, 0, 0])));
    }

    #[test]
    fn additive_identity() {
        let a = series(&[5, -2, 7, 0, 1]);
        assert!((&a + &g4().zero()).eq_exact(&a));
    }

    #[test]
    fn mismatched_truncation_is_an_error() {
        let a = g4().one();
        let b = Ring::graded(2).one();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::TruncationMismatch(4, 2))
        ));
    }

    #[test]
    fn j_squared_lands_at_order_two() {
        let j = g4().j();
        let jj = &j * &j;
        assert!(jj.eq_exact(&series(&[0, 0, 1, 0, 0])));
    }

    #[test]
    fn iota_squares_to_zero() {
        let j = g4().j();
        let jj = &j * &j;
        assert!(jj.eval(EvalMode::Nilpotent).is_zero());
        // and directly in the dual ring
        let i = Ring::dual().j();
        assert!((&i * &i).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let one = g4().one();
        let j = g4().j();
        let lhs = (&one + &j) * (&one - &j);
        assert!(lhs.eq_exact(&series(&[1, 0, -1, 0, 0])));
    }

    #[test]
    fn geometric_series_inverse() {
        let one = g4().one();
        let j = g4().j();
        let inv = (&one + &j).invert().unwrap();
        assert!(inv.eq_exact(&series(&[1, -1, 1, -1, 1])));
        assert!((&inv * &(&one + &j)).eq_exact(&one));
    }

    #[test]
    fn constant_inverse() {
        let two = g4().scalar(Coeff::from_int(2));
        let half = two.invert().unwrap();
        assert!(half.eq_exact(&g4().scalar(Coeff::from_ratio(1, 2))));
    }

    #[test]
    fn pure_j_is_not_invertible() {
        assert!(matches!(g4().j().invert(), Err(Error::NotInvertible)));
    }

    #[test]
    fn taylor_rules_for_nilpotent_arguments() {
        // cos(ιx) = 1 and sin(ιx) = ιx, exactly, for rational x
        let x = Coeff::from_ratio(7, 3);
        let arg = Ring::dual().j().mul_coeff(&x);
        let c = arg.apply_taylor(AnalyticFn::Cos);
        assert!(c.eq_exact(&Ring::dual().one()));
        let s = arg.apply_taylor(AnalyticFn::Sin);
        assert!(s.eq_exact(&Ring::dual().j().mul_coeff(&x)));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = g4().zero().apply_taylor(AnalyticFn::Exp);
        assert!(e.eq_exact(&g4().one()));
    }

    #[test]
    fn taylor_around_nonzero_constant_is_honest() {
        // classical ring: length-one series, cos evaluates numerically
        let a = Ring::classical().scalar(Coeff::from_f64(0.3));
        let c = a.apply_taylor(AnalyticFn::Cos);
        assert!((c.order(0).to_c64().re - 0.3f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn eval_modes_project_as_defined() {
        let a = series(&[1, 2, 3, 4, 5]);
        assert!(a.eval(EvalMode::Classical).eq_exact(&JScalar::from_coeffs(vec![
            Coeff::from_int(15)
        ])));
        assert!(a.eval(EvalMode::Nilpotent).eq_exact(&JScalar::from_coeffs(vec![
            Coeff::from_int(1),
            Coeff::from_int(2)
        ])));
        assert!(a.eval(EvalMode::Limit).eq_exact(&JScalar::from_coeffs(vec![
            Coeff::from_int(1)
        ])));
    }

    #[test]
    fn peel_j_checks_the_grading() {
        let j = g4().j();
        let a = j.mul_coeff(&Coeff::from_int(3));
        let peeled = a.peel_j(1, 1e-12).unwrap();
        assert!(peeled.eq_exact(&g4().scalar(Coeff::from_int(3))));
        assert!(g4().one().peel_j(1, 1e-12).is_err());
    }

    #[test]
    fn pythagorean_identity_truncated() {
        let x = g4().j().mul_coeff(&Coeff::from_ratio(5, 7));
        let c = x.apply_taylor(AnalyticFn::Cos);
        let s = x.apply_taylor(AnalyticFn::Sin);
        let one = (&c * &c) + (&s * &s);
        assert!(one.eq_exact(&g4().one()));
    }
}
