//! Coefficient fields for exact and floating point computations.
//!
//! Everything downstream (matrices, polynomials, series, operators) is
//! generic over [`Scalar`]. Three fields are provided: exact rationals,
//! exact Gaussian rationals, and complex double floats. Exact fields are
//! the default for every identity check; floats only appear where the
//! input itself is non-rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which coefficient field a value set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    Rational,
    GaussianRational,
    ComplexFloat,
}

impl fmt::Display for CoefficientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientKind::Rational => write!(f, "rational"),
            CoefficientKind::GaussianRational => write!(f, "gaussian-rational"),
            CoefficientKind::ComplexFloat => write!(f, "complex-float"),
        }
    }
}

/// A coefficient field.
///
/// `validation_eq` is exact equality for the exact fields and a 1e-12
/// comparison for floats; it is what unitarity and involution checks use.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    const KIND: CoefficientKind;

    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Complex conjugate (identity on rationals).
    fn conj(&self) -> Self;
    /// Magnitude estimate used to pick elimination pivots.
    fn pivot_magnitude(&self) -> f64;
    fn validation_eq(&self, other: &Self) -> bool;
    /// The value as an exact rational, if it is one (imaginary part zero).
    fn as_rational(&self) -> Option<BigRational>;
    fn to_c64(&self) -> Complex64;
}

/// Exact rational scalar.
pub type Rational = BigRational;

impl Scalar for BigRational {
    const KIND: CoefficientKind = CoefficientKind::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn pivot_magnitude(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn validation_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

/// Exact Gaussian rational a + b i with a, b in Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_re(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::from_re(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_re(BigRational::one())
    }
}

impl Scalar for GaussianRational {
    const KIND: CoefficientKind = CoefficientKind::GaussianRational;

    fn from_i64(v: i64) -> Self {
        Self::from_re(BigRational::from_integer(v.into()))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::from_re(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn pivot_magnitude(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn validation_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn as_rational(&self) -> Option<BigRational> {
        if Zero::is_zero(&self.im) {
            Some(self.re.clone())
        } else {
            None
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Tolerance for float-mode validation comparisons.
pub const FLOAT_VALIDATION_TOL: f64 = 1e-12;

impl Scalar for Complex64 {
    const KIND: CoefficientKind = CoefficientKind::ComplexFloat;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn pivot_magnitude(&self) -> f64 {
        self.norm_sqr()
    }
    fn validation_eq(&self, other: &Self) -> bool {
        (self - other).norm() <= FLOAT_VALIDATION_TOL
    }
    fn as_rational(&self) -> Option<BigRational> {
        None
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Parses "p/q", "p", or a plain decimal like "0.1" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    // Decimal form: sign, integer part, optional fraction digits.
    if let Some(dot) = s.find('.') {
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        if !frac_part.is_empty() && frac_part.chars().all(|c| c.is_ascii_digit()) {
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if int_digits.chars().all(|c| c.is_ascii_digit()) {
                let joined = format!(
                    "{}{}",
                    if int_digits.is_empty() { "0" } else { int_digits },
                    frac_part
                );
                let numer = BigInt::from_str(&joined)
                    .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
                let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
                let r = BigRational::new(numer, denom);
                return Ok(if negative { -r } else { r });
            }
        }
    }
    Err(Error::Parse(format!("cannot parse rational {s:?}")))
}

/// Formats a rational as "p/q", or just "p" for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accurate conversion of an arbitrary-size rational to f64.
///
/// Works through the leading 64 bits of numerator and denominator so that
/// values whose parts overflow f64 are still converted with full f64
/// relative precision.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let sign = if numer.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let n = numer.magnitude();
    let d = denom.magnitude();
    let nbits = n.bits() as i64;
    let dbits = d.bits() as i64;
    // Shift both to ~80 significant bits and divide in u128.
    let take = 80i64;
    let n_top = top_bits(n, take);
    let d_top = top_bits(d, take);
    let mantissa = n_top as f64 / d_top as f64;
    let exp = (nbits - take.min(nbits)) - (dbits - take.min(dbits));
    sign * mantissa * pow2(exp)
}

fn top_bits(v: &num_bigint::BigUint, take: i64) -> u128 {
    let bits = v.bits() as i64;
    let shift = (bits - take).max(0) as u64;
    let shifted = v >> shift;
    shifted.to_u128().expect("top bits fit in u128")
}

fn pow2(e: i64) -> f64 {
    // f64 powi saturates sensibly for our ranges.
    2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Natural log of a positive rational, accurate also when the value is
/// extremely close to 1 (uses ln_1p on the exact difference) and when
/// numerator or denominator overflow f64 (uses bit lengths).
pub fn ln_rational(r: &BigRational) -> Result<f64> {
    if r.is_negative() || r.numer().is_zero() {
        return Err(Error::Parse(format!(
            "ln of non-positive rational {}",
            format_rational(r)
        )));
    }
    let one = BigRational::one();
    let diff = r - &one;
    let diff_f = rational_to_f64(&diff);
    if diff_f.abs() < 0.5 {
        return Ok(diff_f.ln_1p());
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let take = 80i64;
    let nbits = n.bits() as i64;
    let dbits = d.bits() as i64;
    let n_top = top_bits(n, take) as f64;
    let d_top = top_bits(d, take) as f64;
    let ln2 = std::f64::consts::LN_2;
    Ok(n_top.ln() - d_top.ln()
        + ((nbits - take.min(nbits)) - (dbits - take.min(dbits))) as f64 * ln2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-2.5").unwrap(), rat(-5, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn format_round_trip() {
        assert_eq!(format_rational(&rat(3, 4)), "3/4");
        assert_eq!(format_rational(&rat(5, 1)), "5");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn gaussian_field_ops() {
        let i = GaussianRational::i();
        let minus_one = i.clone() * i.clone();
        assert_eq!(minus_one, GaussianRational::from_i64(-1));
        let z = GaussianRational::new(rat(1, 2), rat(3, 5));
        let w = z.inv().unwrap() * z.clone();
        assert!(w.validation_eq(&GaussianRational::one()));
        assert_eq!(z.conj().im, rat(-3, 5));
    }

    #[test]
    fn rational_to_f64_huge() {
        let big = BigRational::from_integer(BigInt::from(10).pow(400));
        // Overflows f64 as a whole; ratio of two such stays finite.
        let r = &big / (&big * BigRational::from_integer(3.into()));
        let f = rational_to_f64(&r);
        assert!((f - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ln_rational_near_one() {
        // 1 + 1e-30: ln must resolve the tiny difference exactly.
        let r = BigRational::one()
            + BigRational::new(1.into(), BigInt::from(10).pow(30));
        let l = ln_rational(&r).unwrap();
        assert!((l - 1e-30).abs() < 1e-40);
        let r2 = BigRational::from_integer(BigInt::from(10).pow(100));
        let l2 = ln_rational(&r2).unwrap();
        assert!((l2 - 100.0 * 10f64.ln()).abs() < 1e-9);
        assert!(ln_rational(&rat(-1, 2)).is_err());
    }

    #[test]
    fn complex_float_validation_eq() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 + 1e-13, 0.0);
        assert!(a.validation_eq(&b));
        let c = Complex64::new(1.0 + 1e-9, 0.0);
        assert!(!a.validation_eq(&c));
    }
}
