//! Exact combinatorial bookkeeping for a family of odd-degree moduli
//! computations.
//!
//! The crate has three layers, all of them built on exact arithmetic
//! (`BigInt` / `BigRational`, never floating point):
//!
//! * [`ranks`] evaluates several closed-form and summation expressions for
//!   the rank of a distinguished K-theory lattice and checks that they all
//!   agree, including a brute-force subset-pair count and an exact variance
//!   identity over the rationals.
//! * [`flips`] and [`sod`] walk the birational bookkeeping: per-step blow-up
//!   counts, rank deltas, Poincare polynomial refinements, and the
//!   semiorthogonal ledger of components indexed by small subsets, together
//!   with an exact general-position check for hyperplane systems.
//! * [`isotropic`] counts totally isotropic subspaces common to a pair of
//!   diagonal quadratic forms over a prime field, with a pruned
//!   row-echelon enumerator, an independent unpruned oracle, and a batch
//!   experiment driver that compares counts against polynomial predictions.
//!
//! Everything is deterministic: enumeration orders are fixed, and repeated
//! runs produce identical results.

pub mod error;
pub mod flips;
pub mod genus;
pub mod isotropic;
pub mod poly;
pub mod ranks;
pub mod sod;

pub use error::{Error, Result};
pub use genus::Genus;

// Re-exported so downstream crates can name the arithmetic types that appear
// in public signatures without pinning their own copy of the num stack.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
