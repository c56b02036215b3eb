//! Rank formulas for the distinguished lattice attached to a genus-`g`
//! family, in several independently computable shapes.
//!
//! The headline quantity is `g * 4^(g-1)`. It can be reached four ways:
//!
//! * a double sum over decomposition stages,
//!   `sum_{k=0}^{g-1} sum_{t=0}^{k} (k+1-t) * C(2g+1, t)`;
//! * the triangular compression of the same sum,
//!   `sum_{t=0}^{g-1} C(g+1-t, 2) * C(2g+1, t)`;
//! * a square-weighted sum over half the binomial row,
//!   `sum_{t=0}^{g-1} (g-t)^2 * C(2g, t)`, equal by symmetry to half of
//!   the full-row sum `sum_{t=0}^{2g} (g-t)^2 * C(2g, t)`;
//! * a brute-force count of `sum |A intersect B|` over all ordered pairs of
//!   subsets `A, B` of `{1, .., g}`.
//!
//! The full-row sum divided by `4^g` is the variance of a symmetric binomial
//! random variable, which pins it to `g/2` exactly; that identity is exposed
//! as a check over `BigRational`.
//!
//! All arithmetic is exact. Nothing here allocates beyond the big integers
//! themselves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::Genus;

/// Exact binomial coefficient `C(n, t)`.
///
/// Out-of-range indices (`t < 0` or `t > n`) yield zero, so sums can be
/// written with their natural bounds and no edge-case guards.
pub fn binomial(n: u64, t: i64) -> BigInt {
    if t < 0 || (t as u64) > n {
        return BigInt::zero();
    }
    let t = (t as u64).min(n - t as u64);
    let mut res = BigInt::one();
    for i in 0..t {
        // Exact at every step: the running product of j consecutive
        // integers is divisible by j!.
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

/// Stage-by-stage rank total,
/// `sum_{k=0}^{g-1} sum_{t=0}^{k} (k+1-t) * C(2g+1, t)`.
pub fn rank_double_sum(g: Genus) -> BigInt {
    let n = (2 * g.get() + 1) as u64;
    let mut total = BigInt::zero();
    for k in 0..g.get() as i64 {
        for t in 0..=k {
            total += BigInt::from(k + 1 - t) * binomial(n, t);
        }
    }
    total
}

/// Triangular compression of the double sum,
/// `sum_{t=0}^{g-1} C(g+1-t, 2) * C(2g+1, t)`.
///
/// Swapping the summation order in [`rank_double_sum`] collects the
/// multiplicity of each `C(2g+1, t)` into a triangular number.
pub fn rank_triangular_sum(g: Genus) -> BigInt {
    let n = (2 * g.get() + 1) as u64;
    let mut total = BigInt::zero();
    for t in 0..g.get() as i64 {
        total += binomial((g.get() + 1) as u64 - t as u64, 2) * binomial(n, t);
    }
    total
}

/// Square-weighted half-row sum,
/// `sum_{t=0}^{g-1} (g-t)^2 * C(2g, t)`.
///
/// Internally also evaluates the symmetric full-row form
/// `(1/2) * sum_{t=0}^{2g} (g-t)^2 * C(2g, t)` and asserts the two agree;
/// the `t -> 2g-t` reflection fixes the weight and kills the `t = g` term.
pub fn rank_square_sum(g: Genus) -> BigInt {
    let n = 2 * g.get() as u64;
    let mut half_row = BigInt::zero();
    for t in 0..g.get() as i64 {
        let w = BigInt::from(g.get() as i64 - t);
        half_row += &w * &w * binomial(n, t);
    }
    let full_row = square_weighted_row_sum(g.get());
    assert_eq!(
        &half_row * 2u32,
        full_row,
        "half-row and symmetrized full-row forms disagree"
    );
    half_row
}

/// Closed form `g * 4^(g-1)` for any `g >= 1`.
pub fn rank_closed_form(g: u32) -> BigInt {
    assert!(g >= 1, "closed form requires g >= 1");
    BigInt::from(g) * BigInt::from(4u32).pow(g - 1)
}

/// Brute-force evaluation of `sum |A intersect B|` over all ordered pairs
/// of subsets `A, B` of `{1, .., g}`.
///
/// Enumerates all `4^g` pairs as bitmasks, so the instance is capped at
/// `g <= 14`.
pub fn subset_intersection_total(g: u32) -> Result<BigInt> {
    assert!(g >= 1, "subset pair count requires g >= 1");
    if g > 14 {
        return Err(Error::SizeCapExceeded {
            op: "subset_intersection_total",
            detail: format!("requires g <= 14, got g = {g}"),
        });
    }
    let masks: u64 = 1 << g;
    let mut total: u64 = 0;
    for a in 0..masks {
        for b in 0..masks {
            total += (a & b).count_ones() as u64;
        }
    }
    Ok(BigInt::from(total))
}

/// The variance identity `sum_{t=0}^{2g} (g-t)^2 * C(2g, t) / 4^g = g/2`,
/// both sides evaluated exactly over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarianceCheck {
    /// Normalized square-weighted row sum.
    pub weighted_sum: BigRational,
    /// The predicted value `g/2`.
    pub expected: BigRational,
}

impl VarianceCheck {
    /// Whether the two sides agree.
    pub fn holds(&self) -> bool {
        self.weighted_sum == self.expected
    }
}

/// Evaluates both sides of the variance identity for any `g >= 1`.
pub fn variance_identity(g: u32) -> VarianceCheck {
    assert!(g >= 1, "variance identity requires g >= 1");
    let row = square_weighted_row_sum(g);
    let norm = BigInt::from(4u32).pow(g);
    VarianceCheck {
        weighted_sum: BigRational::new(row, norm),
        expected: BigRational::new(BigInt::from(g), BigInt::from(2u32)),
    }
}

/// Full-row sum `sum_{t=0}^{2g} (g-t)^2 * C(2g, t)`.
fn square_weighted_row_sum(g: u32) -> BigInt {
    let n = 2 * g as u64;
    let mut total = BigInt::zero();
    for t in 0..=n as i64 {
        let w = BigInt::from(g as i64 - t);
        total += &w * &w * binomial(n, t);
    }
    total
}
