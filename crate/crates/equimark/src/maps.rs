//! Monomial map data and its linear algebra.
//!
//! A [`MapSpec`] holds the exponent matrix of a monomial map: row `l`,
//! column `j` gives the exponent `a_{lj}` with which the `j`-th tuple entry
//! of a domain variable contributes to target group `l`.  The map factors
//! through the intermediate ring: the *splitting* map sends a domain
//! variable `y_(i1..ik)` to `z_{1,i1} ... z_{k,ik}` and the *exponent* map
//! sends `z_{s,j}` to `prod_l x_{l,j}^{a_{ls}}`.  Images of monomials under
//! the splitting map are exactly the degree-`d` elements of the matching
//! monoid: nonnegative Z-tables whose row sums all equal `d` and whose
//! column sums are at most `d`.
//!
//! [`TruncationMatrix`] materializes the linearization of the full map over
//! columns `1..=n`, and [`kernel_basis`] computes saturated integer kernel
//! bases of arbitrary exponent matrices.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{ensure, usage};
use crate::hnf;
use crate::tables::{ExponentTable, IndexTuple, MultiDegree, RingTag};
use crate::{add, mul, Int, Result};

/// Exponent data of a monomial map, plus an optional column truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapSpec {
    k: usize,
    /// `m x k`, entries nonnegative, no all-zero column.
    exponents: Vec<Vec<u64>>,
    truncation: Option<u32>,
}

impl MapSpec {
    pub fn new(k: usize, exponents: Vec<Vec<u64>>, truncation: Option<u32>) -> Result<Self> {
        ensure!(k >= 2, "tuple width k must be at least 2, got {k}");
        ensure!(!exponents.is_empty(), "the exponent matrix needs at least one row");
        for row in &exponents {
            ensure!(
                row.len() == k,
                "every exponent row must have k = {k} entries, got {}",
                row.len()
            );
        }
        for j in 0..k {
            ensure!(
                exponents.iter().any(|row| row[j] != 0),
                "exponent column {} is all zero; drop that tuple slot instead",
                j + 1
            );
        }
        if let Some(n) = truncation {
            ensure!(
                n as usize >= k,
                "truncation n = {n} must be at least the tuple width k = {k}"
            );
        }
        Ok(MapSpec { k, exponents, truncation })
    }

    /// The standard width-2 shape: a single exponent row `(a, b)` with
    /// `a > b >= 1`.
    pub fn width2(a: u64, b: u64) -> Result<Self> {
        ensure!(
            a > b && b >= 1,
            "width-2 exponents must satisfy a > b >= 1, got ({a}, {b}); \
             swap or merge equal entries to normalize"
        );
        Self::new(2, vec![vec![a, b]], None)
    }

    /// Single-row map with arbitrary positive width.
    pub fn single_row(row: Vec<u64>) -> Result<Self> {
        let k = row.len();
        Self::new(k, vec![row], None)
    }

    /// Multi-row map.
    pub fn multi_row(rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        Self::new(k, rows, None)
    }

    pub fn with_truncation(mut self, n: u32) -> Result<Self> {
        ensure!(
            n as usize >= self.k,
            "truncation n = {n} must be at least the tuple width k = {}",
            self.k
        );
        self.truncation = Some(n);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of target groups (rows of the exponent matrix).
    pub fn m(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// The exponent matrix with scalar entries, for kernel computations.
    pub fn exponent_matrix(&self) -> Vec<Vec<Int>> {
        self.exponents
            .iter()
            .map(|row| row.iter().map(|&a| a as Int).collect())
            .collect()
    }

    /// For single-row maps: the row and its gcd.
    pub fn row_gcd(&self) -> u64 {
        self.exponents
            .iter()
            .flatten()
            .fold(0u64, |g, &a| num_integer::gcd(g, a))
    }

    /// The `(a, b)` of a width-2 single-row map.
    pub fn width2_pair(&self) -> Result<(u64, u64)> {
        ensure!(
            self.m() == 1 && self.k == 2,
            "expected a single-row width-2 map, got {} rows and k = {}",
            self.m(),
            self.k
        );
        Ok((self.exponents[0][0], self.exponents[0][1]))
    }

    pub fn tag_y(&self) -> RingTag {
        RingTag::Y { k: self.k }
    }

    pub fn tag_z(&self) -> RingTag {
        RingTag::Z { k: self.k }
    }

    pub fn tag_x(&self) -> RingTag {
        RingTag::X { m: self.m() }
    }

    /// X-ring index tuple for target group `l` (1-based) and column `j`.
    pub fn x_tuple(&self, l: u32, j: u32) -> IndexTuple {
        if self.m() == 1 {
            IndexTuple::new(vec![j])
        } else {
            IndexTuple::new(vec![l, j])
        }
    }
}

impl std::fmt::Display for MapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows = self
            .exponents
            .iter()
            .map(|r| r.iter().map(|a| a.to_string()).join(" "))
            .join("; ");
        write!(f, "[{rows}]")?;
        if let Some(n) = self.truncation {
            write!(f, " truncated to {n} columns")?;
        }
        Ok(())
    }
}

/// A nonnegative Z-table: the exponent table of a monomial in the
/// intermediate ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MatchingTable(ExponentTable);

impl MatchingTable {
    pub fn new(t: ExponentTable) -> Result<Self> {
        match t.tag() {
            RingTag::Z { .. } => {}
            other => usage!("a matching table must be a Z-table, got {other}"),
        }
        ensure!(
            t.is_nonnegative() || t.is_zero(),
            "a matching table must be nonnegative"
        );
        Ok(MatchingTable(t))
    }

    /// Builds from dense rows: `rows[s][j]` is the entry at slot `s+1`,
    /// column `j+1`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let k = rows.len();
        let mut entries = Vec::new();
        for (s, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                entries.push((IndexTuple::new(vec![s as u32 + 1, j as u32 + 1]), c as Int));
            }
        }
        Self::new(ExponentTable::from_entries(RingTag::Z { k }, entries)?)
    }

    pub fn table(&self) -> &ExponentTable {
        &self.0
    }

    pub fn into_table(self) -> ExponentTable {
        self.0
    }

    pub fn k(&self) -> usize {
        match self.0.tag() {
            RingTag::Z { k } => k,
            _ => unreachable!("matching tables are Z-tables"),
        }
    }

    pub fn entry(&self, slot: u32, col: u32) -> Int {
        self.0.coeff(&IndexTuple::new(vec![slot, col]))
    }

    /// Sum per slot row, length `k`.
    pub fn row_sums(&self) -> Vec<Int> {
        let mut sums = vec![0; self.k()];
        for (t, c) in self.0.entries() {
            let s = t.indices()[0] as usize - 1;
            sums[s] = add(sums[s], c);
        }
        sums
    }

    /// Sum per column, sparse.
    pub fn col_sums(&self) -> BTreeMap<u32, Int> {
        let mut sums = BTreeMap::new();
        for (t, c) in self.0.entries() {
            let j = t.indices()[1];
            let slot = sums.entry(j).or_insert(0);
            *slot = add(*slot, c);
        }
        sums
    }

    pub fn width(&self) -> u32 {
        self.0.width()
    }
}

impl std::fmt::Display for MatchingTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether `z` is a product of matchings; on success returns the number of
/// factors `d` (row sums all equal `d`, column sums at most `d`).
pub fn matching_member(z: &MatchingTable) -> Option<Int> {
    let sums = z.row_sums();
    let d = sums[0];
    if sums.iter().any(|&s| s != d) {
        return None;
    }
    if z.col_sums().values().any(|&s| s > d) {
        return None;
    }
    Some(d)
}

/// Divisibility in the matching monoid: both arguments must be members
/// (usage error otherwise); `u` divides `v` iff `v - u` is entrywise
/// nonnegative and itself a member.
pub fn matching_divides(u: &MatchingTable, v: &MatchingTable) -> Result<bool> {
    ensure!(
        matching_member(u).is_some(),
        "matching_divides: the divisor is not in the matching monoid"
    );
    ensure!(
        matching_member(v).is_some(),
        "matching_divides: the dividend is not in the matching monoid"
    );
    if !v.table().dominates(u.table()) {
        return Ok(false);
    }
    let diff = MatchingTable::new(v.table().sub(u.table())?)?;
    Ok(matching_member(&diff).is_some())
}

/// Linearization of the full map on an arbitrary Y-table (any signs).
pub fn linearize_pi(spec: &MapSpec, t: &ExponentTable) -> Result<ExponentTable> {
    ensure!(
        t.tag() == spec.tag_y(),
        "expected a {} table, got {}",
        spec.tag_y(),
        t.tag()
    );
    if let Some(n) = spec.truncation {
        ensure!(
            t.width() <= n,
            "table width {} exceeds the truncation {n}",
            t.width()
        );
    }
    let mut out = ExponentTable::zero(spec.tag_x());
    for (tuple, c) in t.entries() {
        for (l, row) in spec.exponents.iter().enumerate() {
            for (j, &idx) in tuple.indices().iter().enumerate() {
                if row[j] != 0 {
                    out.accumulate(spec.x_tuple(l as u32 + 1, idx), mul(c, row[j] as Int))?;
                }
            }
        }
    }
    Ok(out)
}

/// Image of a domain monomial under the full map.
pub fn pi_apply(spec: &MapSpec, t: &ExponentTable) -> Result<MultiDegree> {
    ensure!(
        t.is_nonnegative() || t.is_zero(),
        "monomial images require a nonnegative table"
    );
    MultiDegree::new(linearize_pi(spec, t)?)
}

/// Linearization of the splitting map on an arbitrary Y-table.
pub fn linearize_phi(k: usize, t: &ExponentTable) -> Result<ExponentTable> {
    ensure!(
        t.tag() == RingTag::Y { k },
        "expected a {} table, got {}",
        RingTag::Y { k },
        t.tag()
    );
    let mut out = ExponentTable::zero(RingTag::Z { k });
    for (tuple, c) in t.entries() {
        for (pos, &idx) in tuple.indices().iter().enumerate() {
            out.accumulate(IndexTuple::new(vec![pos as u32 + 1, idx]), c)?;
        }
    }
    Ok(out)
}

/// Image of a domain monomial under the splitting map: a matching table
/// (one matching per degree).
pub fn phi_apply(k: usize, t: &ExponentTable) -> Result<MatchingTable> {
    ensure!(
        t.is_nonnegative() || t.is_zero(),
        "monomial images require a nonnegative table"
    );
    MatchingTable::new(linearize_phi(k, t)?)
}

/// Linearization of the exponent map on an arbitrary Z-table: slot `s`,
/// column `j` contributes with exponent `a_{ls}` to target `(l, j)`.
pub fn linearize_psi(spec: &MapSpec, z: &ExponentTable) -> Result<ExponentTable> {
    ensure!(
        z.tag() == spec.tag_z(),
        "expected a {} table, got {}",
        spec.tag_z(),
        z.tag()
    );
    let mut out = ExponentTable::zero(spec.tag_x());
    for (tuple, c) in z.entries() {
        let (s, j) = (tuple.indices()[0], tuple.indices()[1]);
        for (l, row) in spec.exponents.iter().enumerate() {
            let a = row[s as usize - 1];
            if a != 0 {
                out.accumulate(spec.x_tuple(l as u32 + 1, j), mul(c, a as Int))?;
            }
        }
    }
    Ok(out)
}

/// Image of a matching table under the exponent map.
pub fn psi_apply(spec: &MapSpec, z: &MatchingTable) -> Result<MultiDegree> {
    MultiDegree::new(linearize_psi(spec, z.table())?)
}

/// The linearization of the full map over columns `1..=n`, one column per
/// domain tuple, in tuple-lexicographic order.
#[derive(Clone, Debug)]
pub struct TruncationMatrix {
    spec: MapSpec,
    n: u32,
    tuples: Vec<IndexTuple>,
    /// `columns[i]` is the image of `e_{tuples[i]}`, flattened by
    /// [`flatten`]; length `m * n`.
    columns: Vec<Vec<Int>>,
}

impl TruncationMatrix {
    pub fn build(spec: &MapSpec, n: u32) -> Result<Self> {
        ensure!(
            n as usize >= spec.k(),
            "truncation n = {n} must be at least the tuple width k = {}",
            spec.k()
        );
        let tuples: Vec<IndexTuple> = (1..=n)
            .permutations(spec.k())
            .map(IndexTuple::new)
            .collect();
        let columns = tuples
            .iter()
            .map(|t| {
                let unit = ExponentTable::unit(spec.tag_y(), t.clone())?;
                flatten(&linearize_pi(spec, &unit)?, n)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncationMatrix { spec: spec.clone(), n, tuples, columns })
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of matrix rows, `m * n`.
    pub fn rows(&self) -> usize {
        self.spec.m() * self.n as usize
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    pub fn columns(&self) -> &[Vec<Int>] {
        &self.columns
    }

    /// Position of a tuple among the matrix columns.
    pub fn index_of(&self, t: &IndexTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    /// Applies the linearization to an arbitrary Y-table supported in
    /// `1..=n`, returning the flattened image vector.
    pub fn apply(&self, t: &ExponentTable) -> Result<Vec<Int>> {
        ensure!(
            t.tag() == self.spec.tag_y(),
            "expected a {} table, got {}",
            self.spec.tag_y(),
            t.tag()
        );
        ensure!(
            t.width() <= self.n,
            "table width {} exceeds the truncation {}",
            t.width(),
            self.n
        );
        let mut out = vec![0; self.rows()];
        for (tuple, c) in t.entries() {
            let i = self
                .index_of(tuple)
                .expect("validated width: tuple must be a matrix column");
            hnf::axpy(&mut out, &self.columns[i], c);
        }
        Ok(out)
    }

    /// Dense matrix rows (row-major), mostly for export.
    pub fn dense_rows(&self) -> Vec<Vec<Int>> {
        let mut rows = vec![vec![0; self.tuples.len()]; self.rows()];
        for (i, col) in self.columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                rows[r][i] = v;
            }
        }
        rows
    }
}

/// Flattens an X- or Z-table supported in columns `1..=n` into a dense
/// vector: entry `(row l, column j)` lands at `(l - 1) * n + (j - 1)`.
pub fn flatten(t: &ExponentTable, n: u32) -> Result<Vec<Int>> {
    let rows = match t.tag() {
        RingTag::X { m } => m,
        RingTag::Z { k } => k,
        RingTag::Y { .. } => usage!("Y-tables have no fixed dense layout; use a TruncationMatrix"),
    };
    ensure!(
        t.width() <= n,
        "table width {} exceeds the truncation {n}",
        t.width()
    );
    let mut out = vec![0; rows * n as usize];
    for (tuple, c) in t.entries() {
        let (l, j) = match t.tag() {
            RingTag::X { m } if m == 1 => (1, tuple.indices()[0]),
            _ => (tuple.indices()[0], tuple.indices()[1]),
        };
        out[(l as usize - 1) * n as usize + (j as usize - 1)] = c;
    }
    Ok(out)
}

/// Inverse of [`flatten`] for X-tables.
pub fn unflatten_x(v: &[Int], m: usize, n: u32) -> Result<ExponentTable> {
    ensure!(
        v.len() == m * n as usize,
        "vector length {} does not match m * n = {}",
        v.len(),
        m * n as usize
    );
    let tag = RingTag::X { m };
    let mut entries = Vec::new();
    for (flat, &c) in v.iter().enumerate() {
        if c != 0 {
            let l = flat / n as usize + 1;
            let j = flat % n as usize + 1;
            let tuple = if m == 1 {
                IndexTuple::new(vec![j as u32])
            } else {
                IndexTuple::new(vec![l as u32, j as u32])
            };
            entries.push((tuple, c));
        }
    }
    ExponentTable::from_entries(tag, entries)
}

/// Saturated basis of the integer kernel of `mat` (rows x columns), with
/// each vector oriented so its last nonzero entry is positive.  The kernel
/// of an integer matrix equals the kernel of its saturation, so the rows
/// generate every integer solution.
pub fn kernel_basis(mat: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    ensure!(!mat.is_empty(), "kernel_basis needs at least one matrix row");
    let cols = mat[0].len();
    ensure!(cols >= 1, "kernel_basis needs at least one matrix column");
    ensure!(
        mat.iter().all(|r| r.len() == cols),
        "kernel_basis: matrix rows must all have {cols} entries"
    );
    let mut basis = hnf::kernel_of(mat);
    for v in &mut basis {
        let last = v.iter().rev().find(|&&c| c != 0);
        if let Some(&c) = last {
            if c < 0 {
                for e in v.iter_mut() {
                    *e = e.checked_neg().expect("integer overflow (neg)");
                }
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple;

    fn spec21() -> MapSpec {
        MapSpec::width2(2, 1).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(MapSpec::width2(1, 1).is_err());
        assert!(MapSpec::width2(1, 2).is_err());
        assert!(MapSpec::new(1, vec![vec![2]], None).is_err());
        assert!(MapSpec::new(2, vec![vec![2, 0], vec![1, 0]], None).is_err()); // zero column
        assert!(MapSpec::new(2, vec![vec![2, 1]], Some(1)).is_err()); // n < k
        assert_eq!(MapSpec::single_row(vec![6, 10, 15]).unwrap().row_gcd(), 1);
        assert_eq!(MapSpec::width2(4, 2).unwrap().row_gcd(), 2);
    }

    #[test]
    fn pi_image_of_a_monomial() {
        // y_12 y_32 -> x1^2 x2^2 x3^2 under (a, b) = (2, 1).
        let t = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [(tuple![1, 2], 1), (tuple![3, 2], 1)],
        )
        .unwrap();
        let d = pi_apply(&spec21(), &t).unwrap();
        let expected = MultiDegree::new(
            ExponentTable::from_entries(
                RingTag::X { m: 1 },
                [(tuple![1], 2), (tuple![2], 2), (tuple![3], 2)],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn multirow_pi_lands_in_grouped_targets() {
        let spec = MapSpec::multi_row(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let t = ExponentTable::unit(RingTag::Y { k: 3 }, tuple![2, 5, 7]).unwrap();
        let d = pi_apply(&spec, &t).unwrap();
        let expected = MultiDegree::new(
            ExponentTable::from_entries(
                RingTag::X { m: 2 },
                [
                    (tuple![1, 2], 1),
                    (tuple![1, 5], 1),
                    (tuple![2, 5], 1),
                    (tuple![2, 7], 1),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn factorization_through_the_intermediate_ring() {
        // psi . phi = pi on a specific monomial.
        let spec = spec21();
        let t = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [(tuple![1, 2], 2), (tuple![2, 1], 1), (tuple![3, 1], 1)],
        )
        .unwrap();
        let z = phi_apply(2, &t).unwrap();
        assert_eq!(psi_apply(&spec, &z).unwrap(), pi_apply(&spec, &t).unwrap());
        // The matching image of a degree-d monomial is a d-fold matching.
        assert_eq!(matching_member(&z), Some(4));
    }

    #[test]
    fn matching_membership() {
        // [[1, 0, 1], [0, 2, 0]]: rows sum to 2, column 2 sums to 2 <= 2.
        let z = MatchingTable::from_rows(&[vec![1, 0, 1], vec![0, 2, 0]]).unwrap();
        assert_eq!(matching_member(&z), Some(2));
        // Column sum 3 > d = 2 breaks membership.
        let bad = MatchingTable::from_rows(&[vec![2, 0], vec![1, 1]]).unwrap();
        assert_eq!(matching_member(&bad), None);
        // Unequal row sums break membership.
        let bad = MatchingTable::from_rows(&[vec![2, 0], vec![1, 0]]).unwrap();
        assert_eq!(matching_member(&bad), None);
        // The empty table is the monoid identity.
        let empty = MatchingTable::from_rows(&[vec![], vec![]]).unwrap();
        assert_eq!(matching_member(&empty), Some(0));
    }

    #[test]
    fn matching_divisibility_needs_member_quotient() {
        // u <= v entrywise is not enough: the difference must again be a
        // matching member.
        let u = MatchingTable::from_rows(&[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let v = MatchingTable::from_rows(&[vec![3, 0, 1], vec![0, 2, 2]]).unwrap();
        assert_eq!(matching_member(&v), Some(4));
        assert!(v.table().dominates(u.table()));
        // v - u = [[2,0,1],[0,2,1]]: rows sum to 3, col 3 sums 2 <= 3: member.
        assert!(matching_divides(&u, &v).unwrap());
        // Now a case where the quotient fails the column bound: the divisor
        // under-uses a saturated column.
        let u2 = MatchingTable::from_rows(&[vec![1, 1, 0], vec![0, 0, 2]]).unwrap();
        let v2 = MatchingTable::from_rows(&[vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(matching_member(&u2), Some(2));
        assert_eq!(matching_member(&v2), Some(3));
        assert!(v2.table().dominates(u2.table()));
        // v2 - u2 = [[1,0,0],[1,0,0]]: column 1 sums to 2 > d = 1.
        assert!(!matching_divides(&u2, &v2).unwrap());
        // Non-members are usage errors.
        let nonmember = MatchingTable::from_rows(&[vec![2, 0], vec![1, 0]]).unwrap();
        assert!(matching_divides(&nonmember, &v).is_err());
    }

    #[test]
    fn truncation_matrix_columns_are_unit_images() {
        let spec = spec21();
        let tm = TruncationMatrix::build(&spec, 3).unwrap();
        assert_eq!(tm.tuples().len(), 6); // ordered pairs from [3]
        assert_eq!(tm.rows(), 3);
        // Column of (1, 2) is 2*e_1 + 1*e_2 = (2, 1, 0).
        let i = tm.index_of(&tuple![1, 2]).unwrap();
        assert_eq!(tm.columns()[i], vec![2, 1, 0]);
        // apply() agrees with the sparse linearization.
        let t = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [(tuple![1, 2], 1), (tuple![3, 2], -1)],
        )
        .unwrap();
        let img = tm.apply(&t).unwrap();
        assert_eq!(img, flatten(&linearize_pi(&spec, &t).unwrap(), 3).unwrap());
        assert_eq!(img, vec![2, 0, -2]);
    }

    #[test]
    fn flatten_round_trips() {
        let d = ExponentTable::from_entries(
            RingTag::X { m: 2 },
            [(tuple![1, 3], 5), (tuple![2, 1], 2)],
        )
        .unwrap();
        let v = flatten(&d, 4).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(unflatten_x(&v, 2, 4).unwrap(), d);
    }

    #[test]
    fn kernel_basis_examples() {
        assert_eq!(kernel_basis(&[vec![2, 1]]).unwrap(), vec![vec![-1, 2]]);
        // [1 1]: the kernel is spanned by (1, -1) up to sign; our convention
        // orients the last nonzero entry positive.
        assert_eq!(kernel_basis(&[vec![1, 1]]).unwrap(), vec![vec![-1, 1]]);
        let ker = kernel_basis(&[vec![6, 10, 15]]).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert_eq!(6 * v[0] + 10 * v[1] + 15 * v[2], 0);
            assert!(v.iter().rev().find(|&&c| c != 0).unwrap() > &0);
        }
    }

    #[test]
    fn kernel_basis_is_primitive() {
        // gcd of the maximal minors of the basis matrix must be 1 (the basis
        // spans a saturated lattice).
        for mat in [
            vec![vec![6, 10, 15]],
            vec![vec![2, 1]],
            vec![vec![1, 2, 4]],
            vec![vec![1, 1, 0], vec![0, 1, 1]],
        ] {
            let ker = kernel_basis(&mat).unwrap();
            if ker.is_empty() {
                continue;
            }
            let r = ker.len();
            let cols = ker[0].len();
            let mut g: Int = 0;
            for combo in (0..cols).combinations(r) {
                let minor: Vec<Vec<Int>> = ker
                    .iter()
                    .map(|row| combo.iter().map(|&c| row[c]).collect())
                    .collect();
                g = num_integer::gcd(g, det(&minor));
            }
            assert_eq!(g, 1, "kernel basis of {mat:?} is not primitive");
        }
    }

    /// Cofactor-expansion determinant for tiny test matrices.
    fn det(m: &[Vec<Int>]) -> Int {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for (j, &c) in m[0].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let minor: Vec<Vec<Int>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(jj, _)| jj != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = c * det(&minor);
            acc += if j % 2 == 0 { term } else { -term };
        }
        acc
    }

    #[test]
    fn multirow_kernel() {
        let ker = kernel_basis(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(ker, vec![vec![1, -1, 1]]);
    }
}
