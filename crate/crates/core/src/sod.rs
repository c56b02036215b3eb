//! The stagewise component ledger and the hyperplane general-position
//! check that underwrites it.
//!
//! Stage `k` (for `k = 0, .., g-1`) of the decomposition carries one
//! component for every subset `I` of the index set `{1, .., 2g+1}` with
//! `|I| <= k`; the component has dimension `k - |I|` and rank `k - |I| + 1`.
//! Summing ranks over a stage gives `sum_{t=0}^{k} (k+1-t) * C(2g+1, t)`,
//! and summing over all stages recovers the double-sum rank formula.
//!
//! The geometric input is a system of hyperplanes on projective `k`-space,
//! one per parameter `a`, with row vector `(1, a, a^2, .., a^k)`. The
//! system is simple normal crossing exactly when every subset of at most
//! `k + 1` rows is linearly independent; for distinct parameters this is
//! the Vandermonde property, and the checker verifies it subset by subset
//! in exact rational arithmetic rather than assuming it.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::ranks::binomial;

/// One component of a decomposition stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodComponent {
    /// Indexing subset, ascending, 1-based; empty for the distinguished
    /// component.
    pub indices: Vec<u32>,
    /// Component dimension, `k - |I|`.
    pub dim: u32,
    /// Component rank, `dim + 1`.
    pub rank: u32,
}

/// Lists the components of stage `k` in enumeration order: by subset
/// cardinality, then lexicographically within a cardinality.
pub fn enumerate_components(g: Genus, k: u32) -> Result<Vec<SodComponent>> {
    if k >= g.stage_count() {
        return Err(Error::StageOutOfRange { g: g.get(), k });
    }
    let d = g.param_count() as u32;
    let mut components = Vec::new();
    for t in 0..=k {
        for indices in (1..=d).combinations(t as usize) {
            components.push(SodComponent {
                indices,
                dim: k - t,
                rank: k - t + 1,
            });
        }
    }
    Ok(components)
}

/// Total rank of stage `k`, `sum_{t=0}^{k} (k+1-t) * C(2g+1, t)`.
pub fn stage_rank(g: Genus, k: u32) -> Result<BigInt> {
    if k >= g.stage_count() {
        return Err(Error::StageOutOfRange { g: g.get(), k });
    }
    let n = (2 * g.get() + 1) as u64;
    let mut total = BigInt::zero();
    for t in 0..=k as i64 {
        total += BigInt::from(k as i64 + 1 - t) * binomial(n, t);
    }
    Ok(total)
}

/// Number of components in stage `k`, `sum_{t=0}^{k} C(2g+1, t)`.
pub fn stage_component_count(g: Genus, k: u32) -> Result<BigInt> {
    if k >= g.stage_count() {
        return Err(Error::StageOutOfRange { g: g.get(), k });
    }
    let n = (2 * g.get() + 1) as u64;
    let mut total = BigInt::zero();
    for t in 0..=k as i64 {
        total += binomial(n, t);
    }
    Ok(total)
}

/// Rank of the whole ledger: the sum of [`stage_rank`] over all stages.
pub fn total_rank(g: Genus) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..g.stage_count() {
        total += stage_rank(g, k).expect("stage index is in range");
    }
    total
}

/// A finite system of hyperplanes in projective `k`-space, stored as the
/// rows of coefficient vectors of length `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSystem {
    k: usize,
    rows: Vec<Vec<BigRational>>,
}

impl HyperplaneSystem {
    /// Builds a system from raw coefficient rows.
    ///
    /// Only the row lengths are validated; degenerate rows are allowed so
    /// the general-position checker can be exercised on bad input.
    pub fn from_rows(k: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        assert!(k >= 1, "ambient projective space must have dimension >= 1");
        for row in &rows {
            if row.len() != k + 1 {
                return Err(Error::WrongVectorLength {
                    expected: k + 1,
                    got: row.len(),
                });
            }
        }
        Ok(HyperplaneSystem { k, rows })
    }

    /// Ambient projective dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of hyperplanes.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Whether the system is empty.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficient rows.
    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }
}

/// Builds the hyperplane system with rows `(1, a, a^2, .., a^k)` for each
/// parameter `a`, rejecting duplicate parameters.
///
/// Duplicates are reported with 1-based positions of the first offending
/// pair.
pub fn build_hyperplanes(k: usize, params: &[BigRational]) -> Result<HyperplaneSystem> {
    assert!(k >= 1, "ambient projective space must have dimension >= 1");
    for j in 1..params.len() {
        for i in 0..j {
            if params[i] == params[j] {
                return Err(Error::DuplicateParameter {
                    value: params[i].to_string(),
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    let rows = params
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(k + 1);
            let mut power = BigRational::one();
            for _ in 0..=k {
                row.push(power.clone());
                power *= a;
            }
            row
        })
        .collect();
    Ok(HyperplaneSystem { k, rows })
}

/// First subset of hyperplanes found to be in special position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionViolation {
    /// Offending subset, ascending, 1-based.
    pub subset: Vec<usize>,
    /// Rank the subset should have, `|I|`.
    pub expected_rank: usize,
    /// Rank it actually has.
    pub actual_rank: usize,
}

/// Outcome of the general-position check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionReport {
    /// Whether every checked subset had full rank.
    pub passed: bool,
    /// Number of subsets whose rank was computed.
    pub subsets_checked: usize,
    /// The first violation in (cardinality, lexicographic) order, if any.
    pub violation: Option<PositionViolation>,
}

/// Checks that every subset of at most `k + 1` rows is linearly
/// independent, i.e. that the hyperplanes cross simple-normally.
///
/// Subsets are visited by cardinality and then lexicographically, and the
/// scan stops at the first violation, so the reported subset is minimal in
/// that order. Larger subsets need no check: once all `(k+1)`-subsets are
/// independent, every subset has the maximal possible rank.
pub fn check_general_position(system: &HyperplaneSystem) -> GeneralPositionReport {
    let d = system.rows.len();
    let max_size = d.min(system.k + 1);
    let mut checked = 0;
    for t in 1..=max_size {
        for subset in (0..d).combinations(t) {
            let picked: Vec<&[BigRational]> =
                subset.iter().map(|&i| system.rows[i].as_slice()).collect();
            let rank = row_rank(&picked);
            checked += 1;
            if rank != t {
                return GeneralPositionReport {
                    passed: false,
                    subsets_checked: checked,
                    violation: Some(PositionViolation {
                        subset: subset.iter().map(|&i| i + 1).collect(),
                        expected_rank: t,
                        actual_rank: rank,
                    }),
                };
            }
        }
    }
    GeneralPositionReport {
        passed: true,
        subsets_checked: checked,
        violation: None,
    }
}

/// Rank of a small rational matrix by fraction-exact Gaussian elimination.
fn row_rank(rows: &[&[BigRational]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &lead_row[col];
            for (entry, lead) in row[col..].iter_mut().zip(&lead_row[col..]) {
                *entry -= &factor * lead;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
