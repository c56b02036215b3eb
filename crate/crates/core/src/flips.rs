//! Rank and Poincare bookkeeping along the wall-crossing chain.
//!
//! A genus-`g` family comes with a chain of `g - 1` birational
//! modifications connecting a starting model of rank `2g - 1` to the full
//! model of rank `g * 4^(g-1)`. Step `i` (for `i = 0, .., g-2`) blows up
//! `n_i` disjoint projective centers of dimension `i` and blows down the
//! dual centers of dimension `2g - 3 - i`, where
//!
//! ```text
//! n_i = sum_{j >= 0} C(2g+1, i+1-2j)    (terms with negative index vanish)
//! ```
//!
//! Each blow-up along a dimension-`c` center in a `(2g-2)`-dimensional
//! ambient space adds `(codim - 1) * (c + 1)` to the rank per center, and
//! each blow-down removes the corresponding amount, so the net rank change
//! per step is
//!
//! ```text
//! delta_i = n_i * ((i+1)(2g-3-i) - i(2g-2-i)) = n_i * (2g-3-2i)
//! ```
//!
//! Both bookkeeping routes are computed and compared on every step. The
//! same chain refines to Poincare polynomials: stage 0 is
//! `1 + q + .. + q^(2g-2)`, and step `i` adds
//!
//! ```text
//! n_i * ((1 + .. + q^i)(q + .. + q^(2g-3-i)) - (1 + .. + q^(2g-3-i))(q + .. + q^i))
//! ```
//!
//! with empty geometric sums equal to zero. Every stage polynomial is
//! palindromic of degree exactly `2g - 2` with extreme coefficients 1, and
//! evaluating at `q = 1` recovers the stage rank.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::poly::UniPoly;
use crate::ranks::binomial;

/// One step of the chain: a simultaneous blow-up and blow-down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipStep {
    /// Step index `i`, in `0..g-1`.
    pub index: u32,
    /// Number of centers modified at this step, `n_i`.
    pub center_count: BigInt,
    /// Dimension of each blown-up center, `i`.
    pub blowup_center_dim: u32,
    /// Dimension of each blown-down center, `2g - 3 - i`.
    pub blowdown_center_dim: u32,
    /// Rank contributed by the blow-ups, `n_i * (i+1) * (2g-3-i)`.
    pub rank_added: BigInt,
    /// Rank removed by the blow-downs, `n_i * i * (2g-2-i)`.
    pub rank_removed: BigInt,
    /// Net change, `rank_added - rank_removed`.
    pub rank_delta: BigInt,
}

/// The full chain for one genus: stage ranks, per-step bookkeeping, and
/// optionally the stage Poincare polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipTrace {
    pub genus: Genus,
    /// Stage ranks, `g` entries; starts at `2g - 1`.
    pub ranks: Vec<BigInt>,
    /// Per-step bookkeeping, `g - 1` entries.
    pub steps: Vec<FlipStep>,
    /// Stage Poincare polynomials when the trace was refined.
    pub poincare: Option<Vec<UniPoly>>,
}

impl FlipTrace {
    /// Rank of the final stage.
    pub fn final_rank(&self) -> &BigInt {
        self.ranks.last().expect("trace has at least one stage")
    }
}

/// Number of centers modified at step `i`,
/// `n_i = sum_j C(2g+1, i+1-2j)`.
pub fn blowup_count(g: Genus, i: u32) -> Result<BigInt> {
    if i >= g.step_count() {
        return Err(Error::StepOutOfRange { g: g.get(), i });
    }
    let n = (2 * g.get() + 1) as u64;
    let mut total = BigInt::zero();
    let mut t = (i + 1) as i64;
    while t >= 0 {
        total += binomial(n, t);
        t -= 2;
    }
    Ok(total)
}

/// Walks the chain, tracking stage ranks through the per-step blow-up and
/// blow-down bookkeeping.
///
/// Every step's net change is cross-checked against the collapsed form
/// `n_i * (2g-3-2i)`; a mismatch would indicate a bookkeeping bug and
/// panics.
pub fn rank_trace(g: Genus) -> FlipTrace {
    let (ranks, steps) = walk_ranks(g);
    FlipTrace {
        genus: g,
        ranks,
        steps,
        poincare: None,
    }
}

/// Walks the chain, refining each stage rank into a Poincare polynomial.
///
/// The returned stage ranks are read off the polynomials at `q = 1`, so
/// they form an independent route to the same numbers as [`rank_trace`].
pub fn poincare_trace(g: Genus) -> FlipTrace {
    let (_, steps) = walk_ranks(g);
    let top = 2 * g.get() as i64 - 2;
    let mut stages = vec![UniPoly::power_range(0, top)];
    for step in &steps {
        let prev = stages.last().expect("stage list is nonempty");
        let refinement = correction_term(g, step.index).scaled(&step.center_count);
        stages.push(prev + &refinement);
    }
    let one = BigInt::one();
    let ranks = stages.iter().map(|p| p.eval(&one)).collect();
    FlipTrace {
        genus: g,
        ranks,
        steps,
        poincare: Some(stages),
    }
}

/// Rank of the final stage of the chain.
pub fn chain_rank(g: Genus) -> BigInt {
    let (ranks, _) = walk_ranks(g);
    ranks.into_iter().next_back().expect("at least one stage")
}

fn walk_ranks(g: Genus) -> (Vec<BigInt>, Vec<FlipStep>) {
    let gv = g.get() as i64;
    let mut ranks = vec![BigInt::from(2 * gv - 1)];
    let mut steps = Vec::with_capacity(g.step_count() as usize);
    for i in 0..g.step_count() {
        let count = blowup_count(g, i).expect("step index is in range");
        let iv = i as i64;
        let up_dim = iv;
        let down_dim = 2 * gv - 3 - iv;
        let rank_added = &count * BigInt::from((up_dim + 1) * down_dim);
        let rank_removed = &count * BigInt::from(up_dim * (down_dim + 1));
        let rank_delta = &rank_added - &rank_removed;
        assert_eq!(
            rank_delta,
            &count * BigInt::from(2 * gv - 3 - 2 * iv),
            "bookkeeping routes disagree at step {i}"
        );
        ranks.push(ranks.last().expect("nonempty") + &rank_delta);
        steps.push(FlipStep {
            index: i,
            center_count: count,
            blowup_center_dim: up_dim as u32,
            blowdown_center_dim: down_dim as u32,
            rank_added,
            rank_removed,
            rank_delta,
        });
    }
    (ranks, steps)
}

/// Unscaled polynomial change at step `i`:
/// `(1 + .. + q^i)(q + .. + q^(2g-3-i)) - (1 + .. + q^(2g-3-i))(q + .. + q^i)`.
fn correction_term(g: Genus, i: u32) -> UniPoly {
    let iv = i as i64;
    let dual = 2 * g.get() as i64 - 3 - iv;
    let first = &UniPoly::power_range(0, iv) * &UniPoly::power_range(1, dual);
    let second = &UniPoly::power_range(0, dual) * &UniPoly::power_range(1, iv);
    &first - &second
}
