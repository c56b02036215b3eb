//! Pruned enumeration of common totally isotropic subspaces.
//!
//! Every `m`-dimensional subspace of `F_p^n` has a unique reduced row
//! echelon basis, determined by its pivot column set and the entries in
//! the free positions. The engine walks pivot column sets in
//! lexicographic order and, within each set, fills rows top to bottom,
//! assigning free entries left to right with values `0, .., p-1` in
//! ascending order. This makes the visit order total and reproducible.
//!
//! Pruning happens at row granularity. When row `r` is complete, the
//! `2(r+1)` Gram conditions that involve only rows `0..=r` (both pairings
//! of row `r` against every earlier row and against itself) are already
//! decided, so a violation discards the whole subtree of deeper rows.
//!
//! The per-row state is maintained incrementally: for each free position
//! the contribution of each candidate value to each pending Gram
//! accumulator is a table lookup, so the cost of extending a partial row
//! by one entry is a handful of adds.

use super::IsotropyInstance;

/// Runs `visit` on every common totally isotropic `m`-dimensional
/// subspace, presented as reduced row echelon rows plus pivot columns.
pub(super) fn enumerate<F>(instance: &IsotropyInstance, mut visit: F)
where
    F: FnMut(&[Vec<u64>], &[usize]),
{
    let n = instance.ambient_dim();
    let m = instance.subspace_dim();
    let mut walker = Walker {
        instance,
        p: instance.field().p(),
        n,
        m,
        pivots: Vec::new(),
        rows: vec![vec![0u64; n]; m],
        visit: &mut visit,
    };
    let mut pivots = first_combination(m);
    loop {
        walker.pivots.clone_from(&pivots);
        walker.fill_row(0);
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
}

/// Lexicographically first ascending index tuple, `0, 1, .., m-1`.
fn first_combination(m: usize) -> Vec<usize> {
    (0..m).collect()
}

/// Advances an ascending index tuple over `0..n` to its lexicographic
/// successor; returns `false` after the last tuple.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let m = c.len();
    for i in (0..m).rev() {
        if c[i] < n - (m - i) {
            c[i] += 1;
            for j in i + 1..m {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Walker<'a, F: FnMut(&[Vec<u64>], &[usize])> {
    instance: &'a IsotropyInstance,
    p: u64,
    n: usize,
    m: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
    visit: &'a mut F,
}

impl<F: FnMut(&[Vec<u64>], &[usize])> Walker<'_, F> {
    /// Enumerates all admissible completions of row `r`, assuming rows
    /// `0..r` are already materialized and mutually admissible.
    fn fill_row(&mut self, r: usize) {
        if r == self.m {
            (self.visit)(&self.rows, &self.pivots);
            return;
        }
        let field = self.instance.field();
        let coeffs = self.instance.params();
        let p = self.p as usize;
        let pivot_col = self.pivots[r];

        // Free positions of this row: columns right of the pivot that are
        // not pivot columns themselves.
        let free: Vec<usize> = (pivot_col + 1..self.n)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let nfree = free.len();

        // Accumulator slots: pairings of the partial row against each
        // earlier row (weighted, unit) and against itself (weighted,
        // unit). All conditions require the final value to be zero.
        let slots = 2 * (r + 1);

        // Base accumulators: the row so far is the bare pivot vector.
        let mut base = vec![0u64; slots];
        for s in 0..r {
            base[2 * s] = field.mul(coeffs[pivot_col], self.rows[s][pivot_col]);
            base[2 * s + 1] = self.rows[s][pivot_col];
        }
        base[2 * r] = field.reduce(coeffs[pivot_col]);
        base[2 * r + 1] = 1 % self.p;

        // Contribution tables: table[(idx * slots + slot) * p + x] is what
        // assigning value x at free position idx adds to that slot.
        let mut table = vec![0u64; nfree * slots * p];
        for (idx, &c) in free.iter().enumerate() {
            for x in 0..self.p {
                let off = (idx * slots) * p + x as usize;
                for s in 0..r {
                    table[off + 2 * s * p] = field.mul(field.mul(coeffs[c], self.rows[s][c]), x);
                    table[off + (2 * s + 1) * p] = field.mul(self.rows[s][c], x);
                }
                let sq = field.mul(x, x);
                table[off + 2 * r * p] = field.mul(coeffs[c], sq);
                table[off + (2 * r + 1) * p] = sq;
            }
        }

        // Accumulator values per search depth, plus the chosen entries.
        let mut accs = vec![0u64; (nfree + 1) * slots];
        accs[..slots].copy_from_slice(&base);
        let mut entries = vec![0u64; nfree];

        self.descend(r, &free, &table, &mut accs, &mut entries, 0, slots);
    }

    /// Depth-first assignment of free positions `pos..` of row `r`.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        &mut self,
        r: usize,
        free: &[usize],
        table: &[u64],
        accs: &mut [u64],
        entries: &mut [u64],
        pos: usize,
        slots: usize,
    ) {
        let p = self.p;
        let pu = p as usize;
        let nfree = free.len();
        if pos == nfree {
            if accs[slots * pos..slots * (pos + 1)].iter().all(|&v| v == 0) {
                self.commit_row(r, free, entries);
            }
            return;
        }
        let tbl_base = pos * slots * pu;
        if pos + 1 == nfree {
            // Deepest position: test each value in place without
            // materializing the next depth.
            'value: for x in 0..p {
                let xi = x as usize;
                for slot in 0..slots {
                    let mut v = accs[slots * pos + slot] + table[tbl_base + slot * pu + xi];
                    if v >= p {
                        v -= p;
                    }
                    if v != 0 {
                        continue 'value;
                    }
                }
                entries[pos] = x;
                self.commit_row(r, free, entries);
            }
            return;
        }
        // Interior positions cannot prune: a nonzero accumulator can still
        // return to zero through later entries. Just roll the state down.
        for x in 0..p {
            let xi = x as usize;
            for slot in 0..slots {
                let mut v = accs[slots * pos + slot] + table[tbl_base + slot * pu + xi];
                if v >= p {
                    v -= p;
                }
                accs[slots * (pos + 1) + slot] = v;
            }
            entries[pos] = x;
            self.descend(r, free, table, accs, entries, pos + 1, slots);
        }
    }

    /// Materializes row `r` from its chosen entries and recurses into the
    /// next row.
    fn commit_row(&mut self, r: usize, free: &[usize], entries: &[u64]) {
        {
            let row = &mut self.rows[r];
            row.iter_mut().for_each(|e| *e = 0);
            row[self.pivots[r]] = 1 % self.p;
            for (idx, &c) in free.iter().enumerate() {
                row[c] = entries[idx];
            }
        }
        self.fill_row(r + 1);
    }
}
