//! Row-style Hermite normal form over the exact scalar.
//!
//! [`HermiteForm`] is an *incremental* echelon accumulator: rows can be
//! inserted one at a time (each insertion performs exact gcd elimination
//! against the existing pivots) and membership can be tested at any point.
//! The stored rows are kept in *reduced* echelon form continuously —
//! pivots positive, every entry above or right of a pivot folded into
//! `[0, pivot)` — so entries never outgrow the pivots no matter how many
//! rows stream in; without that reduction, long insertion streams make
//! the exact entries explode.  Reduction work only happens when a pivot
//! appears or shrinks, which is rare, so the hot path (a row eliminating
//! to zero) stays cheap.  [`HermiteForm::normalize`] re-asserts the same
//! reduction; it is idempotent and kept for canonical-output call sites.

use num_integer::Integer;

use crate::{add, mul, Int};

#[derive(Clone, Debug)]
pub struct HermiteForm {
    cols: usize,
    /// Echelon rows; `rows[r][pivot_cols[r]]` is the (positive) pivot.
    rows: Vec<Vec<Int>>,
    pivot_cols: Vec<usize>,
}

impl HermiteForm {
    pub fn new(cols: usize) -> Self {
        HermiteForm { cols, rows: Vec::new(), pivot_cols: Vec::new() }
    }

    /// Builds the normalized Hermite form of the lattice spanned by `rows`.
    pub fn of(rows: impl IntoIterator<Item = Vec<Int>>, cols: usize) -> Self {
        let mut h = Self::new(cols);
        for r in rows {
            h.insert(r);
        }
        h.normalize();
        h
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    /// Index of the echelon row whose pivot sits in column `j`, if any;
    /// otherwise the position where such a row would be inserted.
    fn pivot_row(&self, j: usize) -> std::result::Result<usize, usize> {
        self.pivot_cols.binary_search(&j)
    }

    /// Adds `v` to the spanned lattice, restoring the echelon invariants.
    ///
    /// Elimination walks left to right; entries before the current leading
    /// column are already zero in both `v` and every echelon row touched,
    /// so all vector work starts at that column.
    pub fn insert(&mut self, mut v: Vec<Int>) {
        assert_eq!(v.len(), self.cols, "row length must match the column count");
        let mut from = 0;
        loop {
            let Some(off) = v[from..].iter().position(|&c| c != 0) else {
                return; // reduced to zero: already in the lattice
            };
            let j = from + off;
            match self.pivot_row(j) {
                Ok(r) => {
                    let p = self.rows[r][j];
                    debug_assert!(p > 0);
                    if v[j] % p == 0 {
                        let q = v[j] / p;
                        let row = &self.rows[r];
                        axpy(&mut v[j..], &row[j..], -q);
                    } else {
                        // Replace the pivot row by the gcd combination and
                        // keep eliminating the transformed remainder.  The
                        // pivot shrank, so re-reduce its row and column.
                        let egcd = p.extended_gcd(&v[j]);
                        let (g, x, y) = (egcd.gcd, egcd.x, egcd.y);
                        debug_assert!(g > 0);
                        let row = std::mem::take(&mut self.rows[r]);
                        let new_row = combine(x, &row, y, &v, j);
                        let new_v = combine(p / g, &v, -(v[j] / g), &row, j);
                        debug_assert_eq!(new_row[j], g);
                        debug_assert_eq!(new_v[j], 0);
                        self.rows[r] = new_row;
                        v = new_v;
                        self.reduce_tail(r);
                        self.reduce_column(r);
                    }
                    from = j + 1;
                }
                Err(r) => {
                    if v[j] < 0 {
                        for c in v.iter_mut() {
                            *c = c.checked_neg().expect("integer overflow (neg)");
                        }
                    }
                    self.rows.insert(r, v);
                    self.pivot_cols.insert(r, j);
                    self.reduce_tail(r);
                    self.reduce_column(r);
                    return;
                }
            }
        }
    }

    /// Whether `v` lies in the spanned lattice.
    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must match the column count");
        let mut v = v.to_vec();
        let mut from = 0;
        loop {
            let Some(off) = v[from..].iter().position(|&c| c != 0) else {
                return true;
            };
            let j = from + off;
            match self.pivot_row(j) {
                Ok(r) => {
                    let p = self.rows[r][j];
                    if v[j] % p != 0 {
                        return false;
                    }
                    let q = v[j] / p;
                    let row = &self.rows[r];
                    axpy(&mut v[j..], &row[j..], -q);
                    from = j + 1;
                }
                Err(_) => return false,
            }
        }
    }

    /// Folds row `u`'s entry in row `r`'s pivot column into `[0, pivot)`.
    fn reduce_entry(&mut self, u: usize, r: usize) {
        let j = self.pivot_cols[r];
        let p = self.rows[r][j];
        let q = self.rows[u][j].div_euclid(p);
        if q != 0 {
            let row = std::mem::take(&mut self.rows[r]);
            axpy(&mut self.rows[u][j..], &row[j..], -q);
            self.rows[r] = row;
        }
    }

    /// Re-reduces row `r` against every pivot to its right.
    fn reduce_tail(&mut self, r: usize) {
        for lower in r + 1..self.rows.len() {
            self.reduce_entry(r, lower);
        }
    }

    /// Re-reduces row `r`'s pivot column in every row above.
    fn reduce_column(&mut self, r: usize) {
        for upper in 0..r {
            self.reduce_entry(upper, r);
        }
    }

    /// Reduces entries above each pivot into `[0, pivot)`, making the form
    /// unique for the spanned lattice.  Insertion already maintains this
    /// invariant; the pass is idempotent.
    pub fn normalize(&mut self) {
        for r in 0..self.rows.len() {
            for lower in r + 1..self.rows.len() {
                self.reduce_entry(r, lower);
            }
        }
    }

    /// Two forms span the same lattice iff their normalized rows agree; this
    /// checks mutual containment without requiring normalization.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.cols == other.cols
            && self.rows.iter().all(|r| other.contains(r))
            && other.rows.iter().all(|r| self.contains(r))
    }
}

/// `dst += c * src`, exactly.
pub(crate) fn axpy(dst: &mut [Int], src: &[Int], c: Int) {
    debug_assert_eq!(dst.len(), src.len());
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = add(*d, mul(c, s));
        }
    }
}

/// `a * u + b * v` as a fresh vector, exactly.  Both inputs are known to be
/// zero before column `from`, so the combination starts there.
fn combine(a: Int, u: &[Int], b: Int, v: &[Int], from: usize) -> Vec<Int> {
    debug_assert!(u[..from].iter().all(|&x| x == 0));
    debug_assert!(v[..from].iter().all(|&x| x == 0));
    let mut out = vec![0; u.len()];
    for (o, (&x, &y)) in out[from..].iter_mut().zip(u[from..].iter().zip(&v[from..])) {
        *o = add(mul(a, x), mul(b, y));
    }
    out
}

/// Basis of the integer kernel `{ v : M v = 0 }` of an `m x k` matrix,
/// as rows of the Hermite form of the kernel lattice (first nonzero entry
/// of each row positive, in pivot order).
///
/// The kernel of an integer matrix is automatically saturated, so this basis
/// generates every integer solution.
pub fn kernel_of(mat: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = mat.len();
    let k = mat.first().map_or(0, Vec::len);
    assert!(mat.iter().all(|r| r.len() == k), "matrix rows must have equal length");
    // Rows (column_i(M) | e_i): any integer combination is (M w | w), so the
    // Hermite rows whose first block vanishes read off a kernel basis.
    let rows = (0..k).map(|i| {
        let mut r = vec![0; m + k];
        for (l, mat_row) in mat.iter().enumerate() {
            r[l] = mat_row[i];
        }
        r[m + i] = 1;
        r
    });
    let h = HermiteForm::of(rows, m + k);
    h.rows()
        .iter()
        .filter(|r| r[..m].iter().all(|&c| c == 0))
        .map(|r| r[m..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_form_of_two_generators() {
        // {(2,1), (1,2)} spans the same lattice as {(1,2), (0,3)}.
        let h = HermiteForm::of([vec![2, 1], vec![1, 2]], 2);
        assert_eq!(h.rows(), &[vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn membership_brute_force_oracle() {
        // Every vector in a box is in the lattice iff it is an integer
        // combination of the generators; enumerate combinations directly.
        let gens = [vec![2, 1], vec![1, 2]];
        let h = HermiteForm::of(gens.iter().cloned(), 2);
        let mut expected = std::collections::BTreeSet::new();
        for c1 in -12..=12i128 {
            for c2 in -12..=12i128 {
                let v = (c1 * 2 + c2, c1 + c2 * 2);
                if v.0.abs() <= 6 && v.1.abs() <= 6 {
                    expected.insert(v);
                }
            }
        }
        for x in -6..=6i128 {
            for y in -6..=6i128 {
                assert_eq!(
                    h.contains(&[x, y]),
                    expected.contains(&(x, y)),
                    "membership mismatch at ({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn incremental_insertion_matches_batch() {
        let gens = vec![
            vec![4, 6, 10],
            vec![0, 10, 4],
            vec![6, 0, -2],
            vec![2, -2, 8],
        ];
        let batch = HermiteForm::of(gens.iter().cloned(), 3);
        let mut inc = HermiteForm::new(3);
        for g in &gens {
            inc.insert(g.clone());
        }
        assert!(inc.same_lattice(&batch));
        inc.normalize();
        assert_eq!(inc.rows(), batch.rows());
    }

    #[test]
    fn normalization_is_canonical() {
        // Two generating sets of the same lattice give identical rows.
        let a = HermiteForm::of([vec![1, 2, 3], vec![0, 4, 5]], 3);
        let b = HermiteForm::of(
            [vec![1, 6, 8], vec![1, 2, 3], vec![2, 8, 11]],
            3,
        );
        assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn kernel_of_single_row() {
        assert_eq!(kernel_of(&[vec![2, 1]]), vec![vec![1, -2]]);
        assert_eq!(kernel_of(&[vec![1, 1]]), vec![vec![1, -1]]);
    }

    #[test]
    fn kernel_vectors_annihilate_and_span() {
        let mat = vec![vec![6, 10, 15]];
        let ker = kernel_of(&mat);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert_eq!(6 * v[0] + 10 * v[1] + 15 * v[2], 0);
        }
        // Oracle: every kernel vector in a box must be an integer
        // combination of the basis (saturation), and conversely.
        let h = HermiteForm::of(ker.iter().cloned(), 3);
        for x in -20..=20i128 {
            for y in -20..=20i128 {
                for z in -20..=20i128 {
                    let in_kernel = 6 * x + 10 * y + 15 * z == 0;
                    assert_eq!(h.contains(&[x, y, z]), in_kernel);
                }
            }
        }
    }

    #[test]
    fn zero_and_duplicate_insertions_are_absorbed() {
        let mut h = HermiteForm::new(2);
        h.insert(vec![0, 0]);
        assert_eq!(h.rank(), 0);
        h.insert(vec![3, -6]);
        h.insert(vec![3, -6]);
        h.insert(vec![-3, 6]);
        assert_eq!(h.rank(), 1);
        assert!(h.contains(&[3, -6]));
        assert!(!h.contains(&[1, -2]));
    }
}
