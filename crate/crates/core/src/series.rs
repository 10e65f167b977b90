//! Truncated formal power series with exact coefficients.

use std::fmt;

use crate::error::{Error, Result};

use crate::poly::ExactPoly;
use crate::scalar::Scalar;

/// Power series known through degree `trunc`; coefficient vector always has
/// length trunc + 1.
#[derive(Clone, PartialEq)]
pub struct FormalSeries<S: Scalar> {
    trunc: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> FormalSeries<S> {
    pub fn zero(trunc: usize) -> Self {
        Self {
            trunc,
            coeffs: vec![S::zero(); trunc + 1],
        }
    }

    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<S>) -> Self {
        coeffs.resize(trunc + 1, S::zero());
        Self { trunc, coeffs }
    }

    pub fn from_poly(p: &ExactPoly<S>, trunc: usize) -> Self {
        Self::from_coeffs(trunc, p.coeffs().to_vec())
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        Self::from_coeffs(
            trunc,
            (0..=trunc).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        Self::from_coeffs(
            trunc,
            (0..=trunc).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = vec![S::zero(); trunc + 1];
        for i in 0..=trunc {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(trunc - i) {
                let term = self.coeff(i) * rhs.coeff(j);
                out[i + j] = out[i + j].clone() + term;
            }
        }
        Self::from_coeffs(trunc, out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        let c0_inv = c0
            .inv()
            .ok_or_else(|| Error::Parse("series inverse needs nonzero constant term".into()))?;
        let mut out = vec![S::zero(); self.trunc + 1];
        out[0] = c0_inv.clone();
        for k in 1..=self.trunc {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + self.coeff(j) * out[k - j].clone();
            }
            out[k] = -(acc * c0_inv.clone());
        }
        Ok(Self::from_coeffs(self.trunc, out))
    }

    /// log of a series with constant term 1, via integration of f'/f.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(0) != S::one() {
            return Err(Error::LogConstantTerm {
                found: format!("{}", self.coeff(0)),
            });
        }
        let inv = self.invert()?;
        // f' truncated one degree lower.
        let deriv = Self::from_coeffs(
            self.trunc,
            (1..=self.trunc)
                .map(|k| self.coeff(k) * S::from_i64(k as i64))
                .collect(),
        );
        let prod = deriv.mul(&inv);
        let mut out = vec![S::zero(); self.trunc + 1];
        for k in 1..=self.trunc {
            let inv_k = S::from_i64(k as i64).inv().expect("k nonzero");
            out[k] = prod.coeff(k - 1) * inv_k;
        }
        Ok(Self::from_coeffs(self.trunc, out))
    }

    /// exp of a series with constant term 0, via e' = g' e.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Parse(
                "series exp needs zero constant term".into(),
            ));
        }
        let mut out = vec![S::zero(); self.trunc + 1];
        out[0] = S::one();
        for k in 1..=self.trunc {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + S::from_i64(j as i64) * self.coeff(j) * out[k - j].clone();
            }
            out[k] = acc * S::from_i64(k as i64).inv().expect("k nonzero");
        }
        Ok(Self::from_coeffs(self.trunc, out))
    }
}

impl<S: Scalar> fmt::Debug for FormalSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(u^{}): {:?}", self.trunc + 1, self.coeffs)
    }
}
