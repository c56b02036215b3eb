//! Counting common totally isotropic subspaces of two diagonal quadratic
//! forms over a prime field.
//!
//! An instance is an odd prime `p`, a genus `g`, and `2g + 1` distinct
//! residues `a_1, .., a_(2g+1)` mod `p`. These define two quadratic forms
//! on the `(2g+1)`-dimensional coordinate space:
//!
//! ```text
//! Q_w(x) = sum a_i * x_i^2        (weighted by the parameters)
//! Q_u(x) = sum x_i^2              (unit weights)
//! ```
//!
//! The quantity of interest is the number of `(g-1)`-dimensional subspaces
//! on which both forms vanish identically. In odd characteristic a
//! subspace is totally isotropic for a form exactly when the restricted
//! Gram matrix of its polarization vanishes, so the test is a finite set
//! of pairings on basis vectors.
//!
//! Two routes compute the count:
//!
//! * [`count_isotropic`] enumerates canonical reduced-row-echelon bases
//!   with aggressive row-level pruning: a partial basis is abandoned as
//!   soon as one Gram condition fails. Enumeration order is fixed (pivot
//!   column sets lexicographically, then free entries lexicographically),
//!   so witness lists are deterministic.
//! * [`naive_count`] is an independent oracle with no shared machinery:
//!   it scans projective points for lines, and counts orthogonal pairs of
//!   isotropic points (dividing by the pairs-per-plane multiplicity) for
//!   planes. It is capped to small instances.
//!
//! The [`experiment`] submodule runs batches of instances and compares
//! counts against the polynomial predictions from [`crate::flips`].

pub mod experiment;
mod naive;
mod rref;

pub use experiment::{
    polynomial_experiment, ExperimentReport, ParamRule, PrimeOutcome, PrimeResult,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::Genus;

/// Default cap on the size of the raw candidate space an enumeration is
/// allowed to face, measured in candidate subspaces before pruning.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 100_000_000;

/// The prime field `F_p` for an odd prime `p`, with elements represented
/// as reduced `u64` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Validates that `p` is an odd prime.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// The field order.
    pub fn p(self) -> u64 {
        self.p
    }

    /// Canonical residue of `x`.
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    /// Sum of two reduced residues.
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    /// Difference of two reduced residues.
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    /// Additive inverse of a reduced residue.
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Product of two reduced residues.
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    /// `a^e` by square and multiply.
    pub fn pow(self, a: u64, mut e: u64) -> u64 {
        let mut base = self.reduce(a);
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue, via Fermat.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }
}

/// One counting instance: field, genus, and the distinct parameter
/// residues defining the weighted form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyInstance {
    field: PrimeField,
    genus: Genus,
    params: Vec<u64>,
}

impl IsotropyInstance {
    /// Builds an instance from raw parameters, which are reduced mod `p`
    /// and must be pairwise distinct after reduction.
    pub fn new(p: u64, genus: Genus, params: &[u64]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if params.len() != genus.param_count() {
            return Err(Error::WrongParameterCount {
                expected: genus.param_count(),
                got: params.len(),
            });
        }
        let params: Vec<u64> = params.iter().map(|&a| field.reduce(a)).collect();
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
        Ok(IsotropyInstance {
            field,
            genus,
            params,
        })
    }

    /// The instance with consecutive parameters `1, 2, .., 2g+1` reduced
    /// mod `p`.
    ///
    /// For `p < 2g + 1` the residues collide and the constructor reports
    /// the duplicate, so this rule is only usable when `p >= 2g + 1`.
    pub fn consecutive(p: u64, genus: Genus) -> Result<Self> {
        let params: Vec<u64> = (1..=genus.param_count() as u64).collect();
        IsotropyInstance::new(p, genus, &params)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    /// Reduced parameter residues, length `2g + 1`.
    pub fn params(&self) -> &[u64] {
        &self.params
    }

    /// Ambient dimension, `2g + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.genus.param_count()
    }

    /// Dimension of the subspaces being counted, `g - 1`.
    pub fn subspace_dim(&self) -> usize {
        self.genus.isotropy_dim()
    }

    /// Polarized pairing of the weighted form, `sum a_i u_i v_i`.
    pub fn weighted_pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        gram(self.field, &self.params, u, v)
    }

    /// Polarized pairing of the unit form, `sum u_i v_i`.
    pub fn unit_pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for (&x, &y) in u.iter().zip(v) {
            acc = f.add(acc, f.mul(x, y));
        }
        acc
    }

    /// Whether both forms vanish on all of `subspace`, tested through the
    /// restricted Gram matrices.
    pub fn is_isotropic(&self, subspace: &Subspace) -> Result<bool> {
        if subspace.ambient() != self.ambient_dim() {
            return Err(Error::WrongVectorLength {
                expected: self.ambient_dim(),
                got: subspace.ambient(),
            });
        }
        let rows = subspace.rows();
        for i in 0..rows.len() {
            for j in i..rows.len() {
                if self.weighted_pairing(&rows[i], &rows[j]) != 0
                    || self.unit_pairing(&rows[i], &rows[j]) != 0
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A linear subspace of the coordinate space, held in reduced row echelon
/// form so that equal spans compare equal.
///
/// Ordering is by pivot columns, then by the row matrix entries; this
/// matches the engine's enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
    ambient: usize,
}

impl Subspace {
    /// Canonicalizes a spanning set into reduced row echelon form.
    ///
    /// The rows must be linearly independent; a dependent row is reported
    /// with its 1-based position.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        assert!(!rows.is_empty(), "a subspace needs at least one row");
        let ambient = rows[0].len();
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::with_capacity(rows.len());
        for (idx, raw) in rows.iter().enumerate() {
            if raw.len() != ambient {
                return Err(Error::WrongVectorLength {
                    expected: ambient,
                    got: raw.len(),
                });
            }
            let mut v: Vec<u64> = raw.iter().map(|&x| field.reduce(x)).collect();
            for (pivot, b) in &basis {
                let c = v[*pivot];
                if c != 0 {
                    for (ve, be) in v.iter_mut().zip(b) {
                        *ve = field.sub(*ve, field.mul(c, *be));
                    }
                }
            }
            let Some(lead) = v.iter().position(|&x| x != 0) else {
                return Err(Error::DependentRow { row: idx + 1 });
            };
            let scale = field.inv(v[lead]);
            for ve in v.iter_mut() {
                *ve = field.mul(*ve, scale);
            }
            for (_, b) in basis.iter_mut() {
                let c = b[lead];
                if c != 0 {
                    for (be, ve) in b.iter_mut().zip(&v) {
                        *be = field.sub(*be, field.mul(c, *ve));
                    }
                }
            }
            let pos = basis
                .iter()
                .position(|(pivot, _)| *pivot > lead)
                .unwrap_or(basis.len());
            basis.insert(pos, (lead, v));
        }
        let pivots = basis.iter().map(|(pivot, _)| *pivot).collect();
        let rows = basis.into_iter().map(|(_, v)| v).collect();
        Ok(Subspace {
            pivots,
            rows,
            ambient,
        })
    }

    /// Builds directly from data already in reduced row echelon form.
    fn from_rref_parts(pivots: Vec<usize>, rows: Vec<Vec<u64>>, ambient: usize) -> Self {
        Subspace {
            pivots,
            rows,
            ambient,
        }
    }

    /// Subspace dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Ambient space dimension.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Pivot columns, ascending, 0-based.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon basis rows.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// Bilinear pairing `sum form_i * u_i * v_i` of a diagonal quadratic form,
/// obtained by polarization (valid in odd characteristic).
///
/// All three slices must have equal length; entries are reduced residues.
pub fn gram(field: PrimeField, form: &[u64], u: &[u64], v: &[u64]) -> u64 {
    assert!(
        form.len() == u.len() && u.len() == v.len(),
        "form and vectors must have equal length"
    );
    let mut acc = 0u64;
    for ((&c, &x), &y) in form.iter().zip(u).zip(v) {
        acc = field.add(acc, field.mul(field.mul(c, x), y));
    }
    acc
}

/// Number of `dim`-dimensional subspaces of an `ambient`-dimensional space
/// over `F_p`: the Gaussian binomial coefficient.
pub fn subspace_candidates(p: u64, ambient: usize, dim: usize) -> BigInt {
    if dim > ambient {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..dim {
        num *= p.pow((ambient - i) as u32) - BigInt::one();
        den *= p.pow((i + 1) as u32) - BigInt::one();
    }
    let q = &num / &den;
    debug_assert!(&q * &den == num, "Gaussian binomial division is exact");
    q
}

/// Counts the common totally isotropic subspaces of dimension `g - 1`
/// under the default candidate budget.
pub fn count_isotropic(instance: &IsotropyInstance) -> Result<BigInt> {
    count_isotropic_with_budget(instance, DEFAULT_CANDIDATE_BUDGET)
}

/// Counts with an explicit candidate budget.
///
/// The budget is a static feasibility gate: the raw candidate space (the
/// Gaussian binomial count of all subspaces of the right dimension) is
/// compared against it before any work happens, and an oversized instance
/// is rejected with [`Error::BudgetExceeded`] naming the candidate count.
pub fn count_isotropic_with_budget(instance: &IsotropyInstance, budget: u64) -> Result<BigInt> {
    check_budget(instance, budget)?;
    let mut count = BigInt::zero();
    rref::enumerate(instance, |_, _| count += 1);
    Ok(count)
}

/// Collects every common totally isotropic subspace, in engine enumeration
/// order (pivot sets lexicographically, then free entries
/// lexicographically).
pub fn isotropic_subspaces(instance: &IsotropyInstance, budget: u64) -> Result<Vec<Subspace>> {
    check_budget(instance, budget)?;
    let ambient = instance.ambient_dim();
    let mut found = Vec::new();
    rref::enumerate(instance, |rows, pivots| {
        found.push(Subspace::from_rref_parts(
            pivots.to_vec(),
            rows.to_vec(),
            ambient,
        ));
    });
    Ok(found)
}

/// Counts the same quantity as [`count_isotropic`] along a route that
/// shares no machinery with the echelon engine.
///
/// Lines are counted by scanning canonical projective points; planes by
/// counting mutually orthogonal pairs of isotropic points and dividing by
/// the `p(p+1)/2` pairs each plane contains. The route is exhaustive and
/// unpruned, and is capped at `g <= 3`, `p <= 13`.
pub fn naive_count(instance: &IsotropyInstance) -> Result<BigInt> {
    naive::check_caps(instance)?;
    naive::count(instance)
}

/// Witness list for [`naive_count`], sorted in the canonical subspace
/// order (which coincides with engine enumeration order).
pub fn naive_subspaces(instance: &IsotropyInstance) -> Result<Vec<Subspace>> {
    naive::check_caps(instance)?;
    naive::subspaces(instance)
}

fn check_budget(instance: &IsotropyInstance, budget: u64) -> Result<()> {
    let candidates = subspace_candidates(
        instance.field.p(),
        instance.ambient_dim(),
        instance.subspace_dim(),
    );
    if candidates > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    Ok(())
}

/// Deterministic Miller-Rabin for `u64`.
///
/// The witness set 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37 is known to
/// be exact for all 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: u32) -> Genus {
        Genus::new(v).unwrap()
    }

    // ===== field =====

    #[test]
    fn field_validation() {
        assert_eq!(PrimeField::new(2).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(PrimeField::new(1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(PrimeField::new(0).unwrap_err(), Error::NotPrime(0));
        assert_eq!(PrimeField::new(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(PrimeField::new(91).unwrap_err(), Error::NotPrime(91));
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.add(7, 9), 3);
        assert_eq!(f.sub(3, 7), 9);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.neg(5), 8);
        assert_eq!(f.mul(7, 9), 11);
        assert_eq!(f.pow(2, 12), 1);
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1, "a={a}");
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let slow = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "n={n}");
        }
        // A Carmichael number and a strong-pseudoprime classic.
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
    }

    // ===== instance =====

    #[test]
    fn instance_validates_parameter_count() {
        assert_eq!(
            IsotropyInstance::new(7, g(2), &[1, 2, 3]).unwrap_err(),
            Error::WrongParameterCount {
                expected: 5,
                got: 3
            }
        );
    }

    #[test]
    fn instance_detects_duplicates_after_reduction() {
        // 6 reduces to 1 mod 5.
        assert_eq!(
            IsotropyInstance::new(5, g(2), &[1, 2, 3, 4, 6]).unwrap_err(),
            Error::DuplicateParameter {
                value: "1".to_string(),
                first: 1,
                second: 5,
            }
        );
    }

    #[test]
    fn consecutive_rule() {
        let inst = IsotropyInstance::consecutive(7, g(3)).unwrap();
        assert_eq!(inst.params(), &[1, 2, 3, 4, 5, 6, 0]);
        // p=5 cannot host 7 distinct residues.
        assert!(matches!(
            IsotropyInstance::consecutive(5, g(3)),
            Err(Error::DuplicateParameter { .. })
        ));
    }

    #[test]
    fn gram_reads_off_diagonal_entries() {
        let f = PrimeField::new(7).unwrap();
        let ones = [1u64; 5];
        let e1 = [1, 0, 0, 0, 0];
        let e2 = [0, 1, 0, 0, 0];
        assert_eq!(gram(f, &ones, &e1, &e2), 0);
        assert_eq!(gram(f, &ones, &e1, &e1), 1);
        let form = [3, 1, 4, 1, 5];
        assert_eq!(gram(f, &form, &e1, &e1), 3);
        assert_eq!(gram(f, &form, &e2, &e2), 1);
    }

    #[test]
    fn pairings_match_hand_values() {
        let inst = IsotropyInstance::new(5, g(2), &[0, 1, 2, 3, 4]).unwrap();
        let u = [1, 2, 0, 2, 1];
        assert_eq!(inst.unit_pairing(&u, &u), 0);
        assert_eq!(inst.weighted_pairing(&u, &u), 0);
        let e0 = [1, 0, 0, 0, 0];
        assert_eq!(inst.unit_pairing(&e0, &e0), 1);
        assert_eq!(inst.weighted_pairing(&e0, &e0), 0);
    }

    #[test]
    fn isotropy_test_on_lines() {
        let f = PrimeField::new(5).unwrap();
        let inst = IsotropyInstance::new(5, g(2), &[0, 1, 2, 3, 4]).unwrap();
        let good = Subspace::from_rows(f, &[vec![1, 2, 0, 2, 1]]).unwrap();
        assert!(inst.is_isotropic(&good).unwrap());
        let bad = Subspace::from_rows(f, &[vec![1, 0, 0, 0, 0]]).unwrap();
        assert!(!inst.is_isotropic(&bad).unwrap());
    }

    #[test]
    fn isotropy_test_checks_ambient() {
        let f = PrimeField::new(5).unwrap();
        let inst = IsotropyInstance::new(5, g(2), &[0, 1, 2, 3, 4]).unwrap();
        let wrong = Subspace::from_rows(f, &[vec![1, 0, 0]]).unwrap();
        assert!(matches!(
            inst.is_isotropic(&wrong),
            Err(Error::WrongVectorLength { .. })
        ));
    }

    // ===== subspaces =====

    #[test]
    fn rref_canonicalizes_bases_of_the_same_span() {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::from_rows(f, &[vec![1, 2, 3], vec![0, 1, 5]]).unwrap();
        // Row operations on the same span: swap and mix.
        let b = Subspace::from_rows(f, &[vec![2, 5, 4], vec![1, 2, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn rref_rejects_dependent_rows() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(
            Subspace::from_rows(f, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap_err(),
            Error::DependentRow { row: 2 }
        );
    }

    #[test]
    fn subspace_display() {
        let f = PrimeField::new(7).unwrap();
        let s = Subspace::from_rows(f, &[vec![1, 0, 4], vec![0, 1, 2]]).unwrap();
        assert_eq!(s.to_string(), "[1 0 4; 0 1 2]");
    }

    // ===== candidate counting and budget =====

    #[test]
    fn gaussian_binomial_known_values() {
        assert_eq!(subspace_candidates(3, 2, 1), BigInt::from(4));
        assert_eq!(subspace_candidates(3, 4, 2), BigInt::from(130));
        assert_eq!(subspace_candidates(5, 5, 1), BigInt::from(781));
        assert_eq!(subspace_candidates(2, 4, 2), BigInt::from(35));
        assert_eq!(subspace_candidates(7, 3, 3), BigInt::from(1));
        assert_eq!(subspace_candidates(7, 3, 4), BigInt::zero());
    }

    #[test]
    fn budget_gate_reports_candidate_count() {
        let inst = IsotropyInstance::new(11, g(2), &[1, 2, 3, 4, 5]).unwrap();
        // [5 choose 1]_11 = 16105 candidates.
        let err = count_isotropic_with_budget(&inst, 16104).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                candidates: BigInt::from(16105),
                budget: 16104
            }
        );
        assert!(count_isotropic_with_budget(&inst, 16105).is_ok());
    }
}
