//! Exact univariate polynomials over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use crate::scalar::Scalar;

/// Polynomial in u with coefficients in S. Trailing zeros are trimmed; the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq)]
pub struct ExactPoly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> ExactPoly<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial c u^k.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of u^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == S::one()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len() - 1;
        let lead_inv = divisor.coeffs[d].inv().expect("nonzero leading coefficient");
        if rem.len() < divisor.coeffs.len() {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision)
            };
        }
        let mut quot = vec![S::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_coeffs(quot))
    }
}

impl<S: Scalar> Add for ExactPoly<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(S::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(S::zero);
            out.push(a + b);
        }
        Self::from_coeffs(out)
    }
}

impl<S: Scalar> Sub for ExactPoly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for ExactPoly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Scalar> Mul for ExactPoly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<S: Scalar> fmt::Display for ExactPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
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
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for ExactPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lagrange interpolation through the points (x_i, y_i); exact over exact
/// fields. Panics if nodes repeat.
pub fn interpolate<S: Scalar>(points: &[(S, S)]) -> ExactPoly<S> {
    let mut result = ExactPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = ExactPoly::constant(S::one());
        let mut denom = S::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis * ExactPoly::from_coeffs(vec![-xj.clone(), S::one()]);
            denom = denom * (xi.clone() - xj.clone());
        }
        let scale = yi.clone() * denom.inv().expect("distinct interpolation nodes");
        result = result + basis * ExactPoly::constant(scale);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(coeffs: &[i64]) -> ExactPoly<Rational> {
        ExactPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = p(&[1, 2]);
        let b = p(&[1, -2]);
        assert_eq!(a.clone() * b.clone(), p(&[1, 0, -4]));
        assert_eq!(a.clone() + b.clone(), p(&[2]));
        assert_eq!(a.clone() - a.clone(), ExactPoly::zero());
        assert_eq!(p(&[0, 0, 0]), ExactPoly::zero());
        assert_eq!(a.degree(), Some(1));
        assert_eq!(ExactPoly::<Rational>::zero().degree(), None);
    }

    #[test]
    fn eval_and_pow() {
        let q = p(&[1, -3, 2]);
        assert_eq!(q.eval(&Rational::from_i64(2)), Rational::from_i64(3));
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(0), ExactPoly::one());
    }

    #[test]
    fn exact_division() {
        let prod = p(&[1, -1]) * p(&[1, 1, 1]);
        assert_eq!(prod.div_exact(&p(&[1, -1])).unwrap(), p(&[1, 1, 1]));
        assert!(p(&[1, 1]).div_exact(&p(&[1, -1])).is_err());
        assert_eq!(
            ExactPoly::<Rational>::zero().div_exact(&p(&[1, -1])).unwrap(),
            ExactPoly::zero()
        );
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = p(&[2, -1, 0, 5]);
        let points: Vec<_> = (-2..=2)
            .map(|x| {
                let xs = Rational::from_i64(x);
                (xs.clone(), q.eval(&xs))
            })
            .collect();
        assert_eq!(interpolate(&points), q);
    }
}
