//! Unpruned oracle for the isotropic subspace count.
//!
//! This route deliberately shares no machinery with the echelon engine.
//! Lines are counted by scanning every canonical projective point (first
//! nonzero coordinate scaled to 1) and testing both quadratic forms from
//! scratch. Planes are counted by scanning every unordered pair of
//! isotropic points and testing mutual orthogonality under both polarized
//! pairings: a totally isotropic plane contains exactly `p(p+1)/2` such
//! pairs (one per unordered pair of its `p+1` lines), so the pair total
//! divides exactly and the quotient is the plane count.
//!
//! Costs are quadratic in the number of isotropic points, so the route is
//! capped at `g <= 3`, `p <= 13`.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{IsotropyInstance, Subspace};
use crate::error::{Error, Result};

/// Largest genus the oracle accepts.
const MAX_GENUS: u32 = 3;
/// Largest field order the oracle accepts.
const MAX_PRIME: u64 = 13;

pub(super) fn check_caps(instance: &IsotropyInstance) -> Result<()> {
    let g = instance.genus().get();
    let p = instance.field().p();
    if g > MAX_GENUS || p > MAX_PRIME {
        return Err(Error::SizeCapExceeded {
            op: "naive_count",
            detail: format!("requires g <= {MAX_GENUS} and p <= {MAX_PRIME}, got g = {g}, p = {p}"),
        });
    }
    Ok(())
}

pub(super) fn count(instance: &IsotropyInstance) -> Result<BigInt> {
    match instance.subspace_dim() {
        1 => Ok(BigInt::from(
            isotropic_points(instance).len() / instance.ambient_dim(),
        )),
        2 => {
            let p = instance.field().p();
            let pair_total = scan_pairs(instance, |_, _| {});
            let per_plane = p * (p + 1) / 2;
            assert!(
                pair_total % per_plane == 0,
                "orthogonal pair total {pair_total} is not a multiple of {per_plane}"
            );
            Ok(BigInt::from(pair_total / per_plane))
        }
        dim => Err(Error::SizeCapExceeded {
            op: "naive_count",
            detail: format!("no unpruned route for subspace dimension {dim}"),
        }),
    }
}

pub(super) fn subspaces(instance: &IsotropyInstance) -> Result<Vec<Subspace>> {
    let field = instance.field();
    match instance.subspace_dim() {
        1 => isotropic_points(instance)
            .chunks(instance.ambient_dim())
            .map(|pt| Subspace::from_rows(field, &[pt.to_vec()]))
            .collect(),
        2 => {
            let mut seen: BTreeSet<Subspace> = BTreeSet::new();
            let mut failure = None;
            scan_pairs(instance, |u, v| {
                match Subspace::from_rows(field, &[u.to_vec(), v.to_vec()]) {
                    Ok(s) => {
                        seen.insert(s);
                    }
                    Err(e) => failure = Some(e),
                }
            });
            match failure {
                Some(e) => Err(e),
                None => Ok(seen.into_iter().collect()),
            }
        }
        dim => Err(Error::SizeCapExceeded {
            op: "naive_subspaces",
            detail: format!("no unpruned route for subspace dimension {dim}"),
        }),
    }
}

/// All canonical projective points killed by both forms, flattened into
/// one buffer of `ambient`-length rows, in ascending order by (leading
/// position, remaining entries read as a base-p number).
fn isotropic_points(instance: &IsotropyInstance) -> Vec<u64> {
    let n = instance.ambient_dim();
    let p = instance.field().p();
    let mut points = Vec::new();
    let mut v = vec![0u64; n];
    for lead in 0..n {
        v.iter_mut().for_each(|e| *e = 0);
        v[lead] = 1;
        'scan: loop {
            if instance.weighted_pairing(&v, &v) == 0 && instance.unit_pairing(&v, &v) == 0 {
                points.extend_from_slice(&v);
            }
            // Odometer over positions right of the lead, rightmost fastest.
            let mut pos = n - 1;
            loop {
                if pos == lead {
                    break 'scan;
                }
                if v[pos] + 1 < p {
                    v[pos] += 1;
                    continue 'scan;
                }
                v[pos] = 0;
                pos -= 1;
            }
        }
    }
    points
}

/// Scans unordered pairs of isotropic points, invoking `on_pair` on every
/// mutually orthogonal pair and returning how many there were.
fn scan_pairs(instance: &IsotropyInstance, mut on_pair: impl FnMut(&[u64], &[u64])) -> u64 {
    let n = instance.ambient_dim();
    let p = instance.field().p();
    let coeffs = instance.params();
    let points = isotropic_points(instance);
    let k = points.len() / n;
    // Parameter-weighted copies make the weighted pairing a plain dot
    // product in the scan.
    let weighted: Vec<u64> = points
        .iter()
        .enumerate()
        .map(|(i, &e)| coeffs[i % n] * e % p)
        .collect();
    let mut total = 0u64;
    for i in 0..k {
        let u = &points[i * n..(i + 1) * n];
        let wu = &weighted[i * n..(i + 1) * n];
        for j in i + 1..k {
            let v = &points[j * n..(j + 1) * n];
            // Entries are < p <= 13 and rows have <= 7 columns, so the dot
            // products stay far below u64 overflow.
            let dw: u64 = wu.iter().zip(v).map(|(&a, &b)| a * b).sum();
            if !dw.is_multiple_of(p) {
                continue;
            }
            let du: u64 = u.iter().zip(v).map(|(&a, &b)| a * b).sum();
            if !du.is_multiple_of(p) {
                continue;
            }
            total += 1;
            on_pair(u, v);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::Genus;

    fn inst(p: u64, g: u32, params: &[u64]) -> IsotropyInstance {
        IsotropyInstance::new(p, Genus::new(g).unwrap(), params).unwrap()
    }

    #[test]
    fn point_scan_matches_full_vector_brute_force() {
        // Re-derive the point list by decoding every one of the 5^5
        // vectors from an integer, with no odometer involved.
        let instance = inst(5, 2, &[0, 1, 2, 3, 4]);
        let n = instance.ambient_dim();
        let p = 5u64;
        let mut expected = 0u64;
        for code in 0..p.pow(n as u32) {
            let mut v = vec![0u64; n];
            let mut rest = code;
            for e in v.iter_mut().rev() {
                *e = rest % p;
                rest /= p;
            }
            let canonical = v.iter().find(|&&e| e != 0) == Some(&1);
            if canonical
                && instance.weighted_pairing(&v, &v) == 0
                && instance.unit_pairing(&v, &v) == 0
            {
                expected += 1;
            }
        }
        let pts = isotropic_points(&instance);
        assert_eq!(pts.len() % n, 0);
        assert_eq!((pts.len() / n) as u64, expected);
        // Each canonical representative has first nonzero coordinate 1.
        for row in pts.chunks(n) {
            let lead = row.iter().position(|&e| e != 0).unwrap();
            assert_eq!(row[lead], 1);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let instance = inst(17, 2, &[1, 2, 3, 4, 5]);
        assert!(matches!(
            check_caps(&instance),
            Err(Error::SizeCapExceeded { .. })
        ));
        let ok = inst(13, 2, &[1, 2, 3, 4, 5]);
        assert!(check_caps(&ok).is_ok());
    }
}
