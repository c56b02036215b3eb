//! Dense univariate polynomials with exact integer coefficients.
//!
//! The flip bookkeeping in [`crate::flips`] refines rank counts into
//! polynomials in a formal variable `q`; this module supplies the small
//! exact-arithmetic polynomial type those traces are built from. The
//! representation is a coefficient vector in ascending degree order with no
//! trailing zeros, so the zero polynomial is the empty vector and equality
//! is structural.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Polynomial in one variable `q` over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    /// Ascending coefficients; empty means zero, last entry is nonzero.
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing
    /// zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    /// The sum of consecutive powers `q^lo + q^(lo+1) + .. + q^hi`.
    ///
    /// An empty range (`hi < lo`) gives the zero polynomial, which lets
    /// callers write range products without guarding degenerate endpoints.
    pub fn power_range(lo: i64, hi: i64) -> Self {
        if hi < lo || hi < 0 {
            return UniPoly::zero();
        }
        let lo = lo.max(0) as usize;
        let hi = hi as usize;
        let mut coeffs = vec![BigInt::zero(); hi + 1];
        for c in coeffs.iter_mut().skip(lo) {
            *c = BigInt::one();
        }
        UniPoly { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficient slice; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Whether the coefficient vector reads the same in both directions.
    ///
    /// The zero polynomial is vacuously palindromic.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// The scalar multiple `c * self`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        // Top coefficient is a product of nonzero integers, so no
        // normalization is needed; keep it anyway for uniformity.
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let one = num_bigint::BigUint::from(1u32);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = *mag == one;
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    // ===== construction and normalization =====

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]), UniPoly::zero());
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[1, 2]).degree(), Some(1));
    }

    #[test]
    fn power_range_basics() {
        assert_eq!(p(&[1, 1, 1]), UniPoly::power_range(0, 2));
        assert_eq!(p(&[0, 1, 1]), UniPoly::power_range(1, 2));
        assert_eq!(UniPoly::power_range(1, 0), UniPoly::zero());
        assert_eq!(UniPoly::power_range(0, -1), UniPoly::zero());
        assert_eq!(UniPoly::power_range(2, 2), p(&[0, 0, 1]));
    }

    // ===== arithmetic =====

    #[test]
    fn add_sub_round_trip() {
        let a = p(&[1, 2, 3]);
        let b = p(&[4, 0, -3]);
        let s = &a + &b;
        assert_eq!(s, p(&[5, 2]));
        assert_eq!(&s - &b, a);
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (1 + q)(1 + q + q^2) = 1 + 2q + 2q^2 + q^3
        let a = p(&[1, 1]);
        let b = p(&[1, 1, 1]);
        assert_eq!(&a * &b, p(&[1, 2, 2, 1]));
        assert_eq!(&a * &UniPoly::zero(), UniPoly::zero());
    }

    #[test]
    fn eval_horner() {
        let q = p(&[1, 6, 1]);
        assert_eq!(q.eval(&BigInt::from(11)), BigInt::from(188));
        assert_eq!(q.eval(&BigInt::from(1)), BigInt::from(8));
        assert_eq!(UniPoly::zero().eval(&BigInt::from(7)), BigInt::from(0));
    }

    #[test]
    fn scaled_by_zero_is_zero() {
        assert_eq!(p(&[1, 2]).scaled(&BigInt::zero()), UniPoly::zero());
        assert_eq!(p(&[1, 2]).scaled(&BigInt::from(3)), p(&[3, 6]));
    }

    // ===== palindromes and display =====

    #[test]
    fn palindrome_detection() {
        assert!(p(&[1, 6, 1]).is_palindromic());
        assert!(p(&[1, 8, 30, 8, 1]).is_palindromic());
        assert!(!p(&[1, 2]).is_palindromic());
        assert!(UniPoly::zero().is_palindromic());
        assert!(p(&[5]).is_palindromic());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 6, 1]).to_string(), "1 + 6q + q^2");
        assert_eq!(p(&[0, 1, 0, 2]).to_string(), "q + 2q^3");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "-1 + q^2");
        assert_eq!(p(&[1, -3]).to_string(), "1 - 3q");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(p(&[7]).to_string(), "7");
    }
}
