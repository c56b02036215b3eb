//! Batch comparison of isotropic subspace counts against the polynomial
//! predictions coming out of the flip chain.
//!
//! For each prime in a batch, an instance is built by a parameter rule,
//! the common isotropic subspaces are counted, and the count is compared
//! with the final-stage Poincare polynomial evaluated at `p`. Agreement
//! is expected for split instances and can genuinely fail otherwise, so a
//! nonzero difference is data, not an error; per-prime failures
//! (non-prime input, collided parameters, blown budget) are likewise
//! recorded and do not abort the rest of the batch.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{count_isotropic_with_budget, IsotropyInstance};
use crate::error::Error;
use crate::flips::poincare_trace;
use crate::genus::Genus;
use crate::poly::UniPoly;

/// How instance parameters are chosen for each prime in a batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamRule {
    /// `a_i = i` for `i = 1, .., 2g+1`, reduced mod `p`.
    Consecutive,
    /// One fixed parameter list used for every prime, reduced mod `p`.
    Explicit(Vec<u64>),
}

/// Outcome for one prime of the batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeResult {
    /// The instance was counted and compared.
    Counted {
        count: BigInt,
        prediction: BigInt,
        /// `count - prediction`; zero means the polynomial matched.
        difference: BigInt,
    },
    /// The instance could not be counted; the batch continues.
    Failed { error: Error },
}

/// One row of an experiment report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeOutcome {
    pub prime: u64,
    pub result: PrimeResult,
}

/// Full report of a batch run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentReport {
    pub genus: Genus,
    /// One outcome per requested prime, in input order.
    pub outcomes: Vec<PrimeOutcome>,
}

impl ExperimentReport {
    /// Whether every prime was counted and matched its prediction.
    ///
    /// An empty batch is vacuously true; any per-prime failure makes this
    /// false.
    pub fn all_differences_zero(&self) -> bool {
        self.outcomes.iter().all(|o| {
            matches!(
                &o.result,
                PrimeResult::Counted { difference, .. } if difference.is_zero()
            )
        })
    }
}

/// Runs the batch: builds an instance per prime under `rule`, counts its
/// common isotropic subspaces within `budget`, and compares against the
/// final Poincare polynomial for `genus` evaluated at the prime.
pub fn polynomial_experiment(
    genus: Genus,
    primes: &[u64],
    rule: &ParamRule,
    budget: u64,
) -> ExperimentReport {
    let trace = poincare_trace(genus);
    let prediction_poly = trace
        .poincare
        .as_ref()
        .expect("refined trace carries polynomials")
        .last()
        .expect("trace has at least one stage");
    let outcomes = primes
        .iter()
        .map(|&prime| PrimeOutcome {
            prime,
            result: run_one(genus, prime, rule, budget, prediction_poly),
        })
        .collect();
    ExperimentReport { genus, outcomes }
}

fn run_one(
    genus: Genus,
    prime: u64,
    rule: &ParamRule,
    budget: u64,
    prediction_poly: &UniPoly,
) -> PrimeResult {
    let built = match rule {
        ParamRule::Consecutive => IsotropyInstance::consecutive(prime, genus),
        ParamRule::Explicit(params) => IsotropyInstance::new(prime, genus, params),
    };
    let instance = match built {
        Ok(instance) => instance,
        Err(error) => return PrimeResult::Failed { error },
    };
    match count_isotropic_with_budget(&instance, budget) {
        Ok(count) => {
            let prediction = prediction_poly.eval(&BigInt::from(prime));
            let difference = &count - &prediction;
            PrimeResult::Counted {
                count,
                prediction,
                difference,
            }
        }
        Err(error) => PrimeResult::Failed { error },
    }
}
