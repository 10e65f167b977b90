//! High-precision float determinants for covers too large for exact
//! rational elimination, backed by astro-float.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Arithmetic context carrying the working precision in bits and the
/// constants cache astro-float needs for ln/exp.
pub struct BigFloatCtx {
    prec: usize,
    consts: Consts,
}

impl BigFloatCtx {
    /// Working precision of at least `decimal_digits` significant digits
    /// (plus guard bits).
    pub fn with_decimal_digits(decimal_digits: u32) -> Self {
        let bits = (decimal_digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        Self {
            prec: bits.max(128),
            consts: Consts::new().expect("constants cache"),
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.prec
    }

    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        if v.is_zero() {
            return BigFloat::from_word(0, self.prec);
        }
        let (sign, mag) = (v.sign(), v.magnitude());
        let words = mag.to_u64_digits();
        let s = if sign == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        // from_words reads the mantissa as a fraction of 2^(64 len), so an
        // integer needs the full word width as its exponent.
        BigFloat::from_words(&words, s, (words.len() * 64) as i32)
    }

    pub fn from_rational(&self, v: &BigRational) -> BigFloat {
        let n = self.from_bigint(v.numer());
        let d = self.from_bigint(v.denom());
        n.div(&d, self.prec, RM)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.prec, RM, &mut self.consts)
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.prec, RM, &mut self.consts)
    }

    /// Positive n-th root via exp(ln(x)/n).
    pub fn root(&mut self, x: &BigFloat, n: usize) -> Result<BigFloat> {
        if x.is_negative() || x.is_zero() {
            return Err(Error::RootOfZero);
        }
        let l = self.ln(x);
        let divisor = BigFloat::from_word(n as u64, self.prec);
        let scaled = l.div(&divisor, self.prec, RM);
        Ok(self.exp(&scaled))
    }

    /// LU determinant with partial pivoting over BigFloat.
    pub fn det_lu(&self, mut rows: Vec<Vec<BigFloat>>) -> BigFloat {
        let n = rows.len();
        let mut det = BigFloat::from_word(1, self.prec);
        let mut negate = false;
        for col in 0..n {
            let mut pivot = col;
            for row in col + 1..n {
                if rows[row][col].abs_cmp(&rows[pivot][col]) == Some(1) {
                    pivot = row;
                }
            }
            if rows[pivot][col].is_zero() {
                return BigFloat::from_word(0, self.prec);
            }
            if pivot != col {
                rows.swap(pivot, col);
                negate = !negate;
            }
            let p = rows[col][col].clone();
            det = det.mul(&p, self.prec, RM);
            for row in col + 1..n {
                if rows[row][col].is_zero() {
                    continue;
                }
                let factor = rows[row][col].div(&p, self.prec, RM);
                for j in col..n {
                    let sub = factor.mul(&rows[col][j], self.prec, RM);
                    rows[row][j] = rows[row][j].sub(&sub, self.prec, RM);
                }
            }
        }
        if negate {
            det.neg()
        } else {
            det
        }
    }
}

/// Accurate f64 view of a BigFloat through its leading mantissa words.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some(exp) = x.exponent() else {
        return f64::NAN;
    };
    let Some(words) = x.mantissa_digits() else {
        return f64::NAN;
    };
    let mut mantissa = 0.0f64;
    // Words are little-endian; the top word carries the leading bit.
    let top = words.len();
    for (rank, idx) in (0..top).rev().enumerate().take(2) {
        mantissa += words[idx] as f64 / 2f64.powi(64 * (rank as i32 + 1));
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * mantissa * 2f64.powi(exp)
}
