//! Coefficient arithmetic for the j-graded ring.
//!
//! Coefficients are complex numbers that stay exact as long as the inputs
//! allow it. The exact representation is the ring Q(i, √2, s) with a single
//! symbolic square root `s` (used for √(g²+g′²) in the physical-basis
//! rotation) and the fixed root √2 (from the W± change of variables). Both
//! roots collapse to rationals whenever the radicand is a perfect square,
//! and √(2k²) collapses onto the √2 axis, so degenerate parameter choices
//! such as g = g′ = 1 remain exact. Anything irrational beyond that (for
//! example couplings recovered from measured masses) drops to `f64`
//! complex arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().expect("rational out of f64 range")
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rational_sqrt(q: &Q) -> Option<Q> {
    let rn = is_perfect_square(q.numer())?;
    let rd = is_perfect_square(q.denom())?;
    Some(Q::new(rn, rd))
}

/// Gaussian rational a + b·i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn zero() -> Self {
        GaussQ::new(Q::zero(), Q::zero())
    }

    pub fn one() -> Self {
        GaussQ::new(Q::one(), Q::zero())
    }

    pub fn i() -> Self {
        GaussQ::new(Q::zero(), Q::one())
    }

    pub fn from_real(q: Q) -> Self {
        GaussQ::new(q, Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussQ::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }

    fn mul_ref(&self, rhs: &GaussQ) -> GaussQ {
        GaussQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn add_ref(&self, rhs: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn scale(&self, q: &Q) -> GaussQ {
        GaussQ::new(&self.re * q, &self.im * q)
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ::new(-self.re, -self.im)
    }
}

/// Element of Q(i, √2, s): parts over the basis {1, √2, s, √2·s}.
///
/// `s2` records the rational value of s²; it is `None` while the two
/// s-components vanish and is unified on mixing (distinct symbolic roots in
/// one expression are a configuration error and panic).
#[derive(Clone, Debug, PartialEq)]
pub struct Ext {
    pub parts: [GaussQ; 4],
    pub s2: Option<Q>,
}

impl Ext {
    pub fn from_gauss(g: GaussQ) -> Self {
        Ext {
            parts: [g, GaussQ::zero(), GaussQ::zero(), GaussQ::zero()],
            s2: None,
        }
    }

    pub fn from_real(q: Q) -> Self {
        Ext::from_gauss(GaussQ::from_real(q))
    }

    pub fn zero() -> Self {
        Ext::from_gauss(GaussQ::zero())
    }

    pub fn one() -> Self {
        Ext::from_gauss(GaussQ::one())
    }

    pub fn i() -> Self {
        Ext::from_gauss(GaussQ::i())
    }

    /// √2 as an exact element.
    pub fn sqrt2() -> Self {
        Ext {
            parts: [
                GaussQ::zero(),
                GaussQ::one(),
                GaussQ::zero(),
                GaussQ::zero(),
            ],
            s2: None,
        }
    }

    /// Exact square root of a positive rational. Perfect squares reduce to
    /// rationals, 2·k² reduces onto the √2 axis, anything else becomes the
    /// symbolic root s with s² = q.
    pub fn sqrt_rational(q: &Q) -> Self {
        assert!(q.is_positive(), "symbolic sqrt needs a positive radicand");
        if let Some(r) = rational_sqrt(q) {
            return Ext::from_real(r);
        }
        let half = q / q_int(2);
        if let Some(r) = rational_sqrt(&half) {
            let mut e = Ext::sqrt2();
            e.parts[1] = GaussQ::from_real(r);
            return e;
        }
        Ext {
            parts: [
                GaussQ::zero(),
                GaussQ::zero(),
                GaussQ::one(),
                GaussQ::zero(),
            ],
            s2: Some(q.clone()),
        }
    }

    fn normalize(mut self) -> Self {
        if self.parts[2].is_zero() && self.parts[3].is_zero() {
            self.s2 = None;
        }
        self
    }

    fn unified_s2(&self, rhs: &Ext) -> Option<Q> {
        match (&self.s2, &rhs.s2) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed incompatible symbolic square roots");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(GaussQ::is_zero)
    }

    pub fn add_ref(&self, rhs: &Ext) -> Ext {
        let s2 = self.unified_s2(rhs);
        let parts = [
            self.parts[0].add_ref(&rhs.parts[0]),
            self.parts[1].add_ref(&rhs.parts[1]),
            self.parts[2].add_ref(&rhs.parts[2]),
            self.parts[3].add_ref(&rhs.parts[3]),
        ];
        Ext { parts, s2 }.normalize()
    }

    pub fn neg_ref(&self) -> Ext {
        Ext {
            parts: [
                self.parts[0].clone().neg(),
                self.parts[1].clone().neg(),
                self.parts[2].clone().neg(),
                self.parts[3].clone().neg(),
            ],
            s2: self.s2.clone(),
        }
    }

    pub fn mul_ref(&self, rhs: &Ext) -> Ext {
        let s2 = self.unified_s2(rhs);
        let ss = s2.clone().unwrap_or_else(Q::zero);
        let two = q_int(2);
        let two_s = &two * &ss;
        let a = &self.parts;
        let b = &rhs.parts;
        // basis products: √2·√2 = 2, s·s = s², √2·s = (√2 s)
        let c0 = a[0]
            .mul_ref(&b[0])
            .add_ref(&a[1].mul_ref(&b[1]).scale(&two))
            .add_ref(&a[2].mul_ref(&b[2]).scale(&ss))
            .add_ref(&a[3].mul_ref(&b[3]).scale(&two_s));
        let c1 = a[0]
            .mul_ref(&b[1])
            .add_ref(&a[1].mul_ref(&b[0]))
            .add_ref(&a[2].mul_ref(&b[3]).scale(&ss))
            .add_ref(&a[3].mul_ref(&b[2]).scale(&ss));
        let c2 = a[0]
            .mul_ref(&b[2])
            .add_ref(&a[2].mul_ref(&b[0]))
            .add_ref(&a[1].mul_ref(&b[3]).scale(&two))
            .add_ref(&a[3].mul_ref(&b[1]).scale(&two));
        let c3 = a[0]
            .mul_ref(&b[3])
            .add_ref(&a[3].mul_ref(&b[0]))
            .add_ref(&a[1].mul_ref(&b[2]))
            .add_ref(&a[2].mul_ref(&b[1]));
        Ext {
            parts: [c0, c1, c2, c3],
            s2,
        }
        .normalize()
    }

    pub fn conj(&self) -> Ext {
        Ext {
            parts: [
                self.parts[0].conj(),
                self.parts[1].conj(),
                self.parts[2].conj(),
                self.parts[3].conj(),
            ],
            s2: self.s2.clone(),
        }
    }

    fn conj_sqrt2(&self) -> Ext {
        Ext {
            parts: [
                self.parts[0].clone(),
                self.parts[1].clone().neg(),
                self.parts[2].clone(),
                self.parts[3].clone().neg(),
            ],
            s2: self.s2.clone(),
        }
    }

    fn conj_s(&self) -> Ext {
        Ext {
            parts: [
                self.parts[0].clone(),
                self.parts[1].clone(),
                self.parts[2].clone().neg(),
                self.parts[3].clone().neg(),
            ],
            s2: self.s2.clone(),
        }
    }

    pub fn inv(&self) -> Option<Ext> {
        if self.is_zero() {
            return None;
        }
        // Collapse the two root axes by multiplying with the conjugates,
        // then invert the remaining Gaussian rational.
        let ys = self.conj_s();
        let n = self.mul_ref(&ys); // s-free
        let ym = n.conj_sqrt2();
        let d = n.mul_ref(&ym); // pure Gaussian rational
        debug_assert!(d.parts[1].is_zero() && d.parts[2].is_zero() && d.parts[3].is_zero());
        let dg = d.parts[0].inv()?;
        Some(ys.mul_ref(&ym).mul_ref(&Ext::from_gauss(dg)))
    }

    pub fn to_c64(&self) -> Complex64 {
        let r2 = std::f64::consts::SQRT_2;
        let s = self
            .s2
            .as_ref()
            .map(|q| q_to_f64(q).sqrt())
            .unwrap_or(0.0);
        self.parts[0].to_c64()
            + self.parts[1].to_c64() * r2
            + self.parts[2].to_c64() * s
            + self.parts[3].to_c64() * (r2 * s)
    }

    /// True when the element lies on the real axis (all parts real).
    pub fn is_real(&self) -> bool {
        self.parts.iter().all(|p| p.im.is_zero())
    }
}

/// Complex coefficient: exact where the inputs allow, `f64` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Exact(Ext),
    Approx(Complex64),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(Ext::zero())
    }

    pub fn one() -> Self {
        Coeff::Exact(Ext::one())
    }

    pub fn i() -> Self {
        Coeff::Exact(Ext::i())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::Exact(Ext::from_real(q_int(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coeff::Exact(Ext::from_real(q_ratio(n, d)))
    }

    pub fn from_rational(q: Q) -> Self {
        Coeff::Exact(Ext::from_real(q))
    }

    pub fn from_gauss(re: Q, im: Q) -> Self {
        Coeff::Exact(Ext::from_gauss(GaussQ::new(re, im)))
    }

    pub fn from_f64(x: f64) -> Self {
        Coeff::Approx(Complex64::new(x, 0.0))
    }

    pub fn from_c64(z: Complex64) -> Self {
        Coeff::Approx(z)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(e) => e.is_zero(),
            Coeff::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Coeff::Exact(e) => e.to_c64(),
            Coeff::Approx(z) => *z,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Exact(e) => Coeff::Exact(e.conj()),
            Coeff::Approx(z) => Coeff::Approx(z.conj()),
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        match self {
            Coeff::Exact(e) => e.inv().map(Coeff::Exact),
            Coeff::Approx(z) => {
                if z.norm() == 0.0 {
                    None
                } else {
                    Some(Coeff::Approx(z.inv()))
                }
            }
        }
    }

    /// Exact equality; exact-vs-approx always compares numerically false
    /// unless both sides are exact with equal canonical form.
    pub fn eq_exact(&self, rhs: &Coeff) -> bool {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a.add_ref(&b.neg_ref()).is_zero(),
            _ => false,
        }
    }

    pub fn approx_eq(&self, rhs: &Coeff, tol: f64) -> bool {
        approx_eq_c64(self.to_c64(), rhs.to_c64(), tol)
    }
}

/// Relative comparison with an absolute floor for values near zero.
pub fn approx_eq_c64(a: Complex64, b: Complex64, tol: f64) -> bool {
    let d = (a - b).norm();
    let m = a.norm().max(b.norm());
    d <= tol * m || d <= tol
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.add_ref(b)),
            _ => Coeff::Approx(self.to_c64() + rhs.to_c64()),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs.clone())
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        &self - &rhs
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.mul_ref(b)),
            _ => Coeff::Approx(self.to_c64() * rhs.to_c64()),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(e) => Coeff::Exact(e.neg_ref()),
            Coeff::Approx(z) => Coeff::Approx(-z),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        if z.im == 0.0 {
            write!(f, "{}", z.re)
        } else if z.re == 0.0 {
            write!(f, "{}i", z.im)
        } else if z.im < 0.0 {
            write!(f, "{}{}i", z.re, z.im)
        } else {
            write!(f, "{}+{}i", z.re, z.im)
        }
    }
}

/// Real model parameter: exact rational or measured float.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(Q),
    Approx(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(Q::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Real::Exact(q_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Real::Exact(q_ratio(n, d))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q_to_f64(q),
            Real::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_positive(),
            Real::Approx(x) => *x > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_negative(),
            Real::Approx(x) => *x < 0.0,
        }
    }

    pub fn add(&self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Approx(self.to_f64() + rhs.to_f64()),
        }
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => Real::Approx(self.to_f64() - rhs.to_f64()),
        }
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Approx(self.to_f64() * rhs.to_f64()),
        }
    }

    pub fn div(&self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) if !b.is_zero() => Real::Exact(a / b),
            _ => Real::Approx(self.to_f64() / rhs.to_f64()),
        }
    }

    /// Square root: exact only for perfect rational squares.
    pub fn sqrt(&self) -> Real {
        match self {
            Real::Exact(q) => match rational_sqrt(q) {
                Some(r) => Real::Exact(r),
                None => Real::Approx(q_to_f64(q).sqrt()),
            },
            Real::Approx(x) => Real::Approx(x.sqrt()),
        }
    }

    /// Square root as a coefficient, keeping √2 and one symbolic root exact.
    pub fn sqrt_coeff(&self) -> Coeff {
        match self {
            Real::Exact(q) => Coeff::Exact(Ext::sqrt_rational(q)),
            Real::Approx(x) => Coeff::from_f64(x.sqrt()),
        }
    }

    pub fn to_coeff(&self) -> Coeff {
        match self {
            Real::Exact(q) => Coeff::from_rational(q.clone()),
            Real::Approx(x) => Coeff::from_f64(*x),
        }
    }

    /// Parse a decimal literal (`12`, `-0.65`, `1.2e-3`) into an exact
    /// rational; this keeps CLI-supplied couplings in the exact domain.
    pub fn parse_decimal(text: &str) -> Option<Real> {
        let t = text.trim();
        if t.is_empty() {
            return None;
        }
        let (mant, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().ok()?),
            None => (t, 0),
        };
        let (mant, neg) = match mant.strip_prefix('-') {
            Some(rest) => (rest, true),
            None => (mant.strip_prefix('+').unwrap_or(mant), false),
        };
        let (int_part, frac_part) = match mant.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let scale = frac_part.len() as i32 - exp;
        let ten = BigInt::from(10);
        let mut q = Q::from_integer(n);
        if scale > 0 {
            q /= Q::from_integer(ten.pow(scale as u32));
        } else if scale < 0 {
            q *= Q::from_integer(ten.pow((-scale) as u32));
        }
        if neg {
            q = -q;
        }
        Some(Real::Exact(q))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Approx(x) => write!(f, "{x}"),
        }
    }
}
