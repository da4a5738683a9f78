//! Exact integer polynomials.
//!
//! Coefficients are arbitrary-precision: falling-factorial coefficients
//! overflow 64-bit integers near 20 vertices, and everything downstream
//! (Euler factors, residue counts) assumes the chromatic polynomial is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the highest index is nonzero
/// except for the zero polynomial, which is stored as `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from `coeffs[i] = coefficient of x^i`, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero()],
        }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// The linear factor `x - c`.
    pub fn x_minus(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("coeffs nonempty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval_big(&BigInt::from(x))
    }

    /// Sum of absolute values of the non-leading coefficients.
    ///
    /// For a monic polynomial this controls how far the Euler factor
    /// `P(x)/x^k` can sit from 1: `|P(x)/x^k - 1| <= A/x` for `x >= 1`.
    pub fn below_leading_abs_sum(&self) -> BigInt {
        let mut sum = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            sum += c.abs();
        }
        sum
    }

    /// `self * (x - c)` without building a second polynomial.
    pub fn mul_linear(&self, c: i64) -> IntPolynomial {
        self * &IntPolynomial::x_minus(c)
    }

    pub fn pow(&self, n: usize) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients as decimal strings, constant term first. This is the
    /// exact-interchange form used by the CLI's JSON output.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Human-readable expanded form, highest power first, e.g.
    /// `x^3 - 3*x^2 + 2*x`.
    pub fn expanded_form(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if !unit_coeff {
                    out.push('*');
                }
                out.push('x');
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expanded_form())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = IntPolynomial::from_i64(&[0, 2, -3, 1]); // x^3 - 3x^2 + 2x
        assert_eq!(p.degree(), 3);
        assert!(p.is_monic());
        assert_eq!(p.eval_i64(4), BigInt::from(24));
        assert_eq!(p.eval_i64(0), BigInt::zero());
        assert_eq!(p.below_leading_abs_sum(), BigInt::from(5));
    }

    #[test]
    fn mul_matches_expansion() {
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
        let p = IntPolynomial::x_minus(1).pow(3);
        assert_eq!(p, IntPolynomial::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn sub_trims_leading_zeros() {
        let a = IntPolynomial::from_i64(&[0, 0, 1]);
        let b = IntPolynomial::from_i64(&[1, 0, 1]);
        let d = &a - &b;
        assert_eq!(d, IntPolynomial::from_i64(&[-1]));
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn display_forms() {
        let p = IntPolynomial::from_i64(&[0, 2, -3, 1]);
        assert_eq!(p.expanded_form(), "x^3 - 3*x^2 + 2*x");
        assert_eq!(IntPolynomial::zero().expanded_form(), "0");
        assert_eq!(IntPolynomial::from_i64(&[0, -1]).expanded_form(), "-x");
        assert_eq!(
            p.coeff_strings(),
            vec!["0".to_string(), "2".into(), "-3".into(), "1".into()]
        );
    }
}
