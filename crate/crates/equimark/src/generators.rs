//! The named generating families and the [`GeneratorSet`] container.
//!
//! Every family is a finite list of binomial moves together with the kernel
//! it is claimed to generate (as a lattice, a Markov basis, or a Laurent
//! generating set — the claim strength is recorded in [`GeneratorKind`] and
//! verified separately by [`crate::verify`]).  Construction always checks
//! that each move actually lies in the relevant kernel, canonicalizes the
//! moves, and rejects duplicates modulo symmetry and sign.
//!
//! Naming used below, for a single exponent row `(a_1 .. a_k)`:
//!
//! * *quadratic swaps* `Quad`: for each position pair `r < s`, swap the
//!   columns that two variables feed into positions `r` and `s`.  These
//!   generate the kernel of the splitting map.
//! * *elementary column moves* `f_j`: replace column 1 by column 2 in
//!   position `j`, holding fixed (distinct) columns in the other positions.
//!   An integer combination `w = sum_j c_j f_j` with `(c_j)` in the kernel
//!   of the exponent row bridges the kernel of the exponent map.

use std::collections::BTreeSet;

use crate::error::{ensure, usage};
use crate::maps::{
    linearize_phi, linearize_pi, linearize_psi, matching_member, MapSpec, MatchingTable,
};
use crate::symmetry::canonical_form_binomial;
use crate::tables::{Binomial, ExponentTable, IndexTuple, RingTag};
use crate::{Int, Result};

/// How strong a generation claim a set carries.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorKind {
    /// Generates the kernel as a lattice (integer spans).
    Lattice,
    /// Connects every fiber of the map (a Markov basis).
    Markov,
    /// Generates the kernel ideal after inverting all variables.
    Laurent,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Lattice => "lattice",
            GeneratorKind::Markov => "markov",
            GeneratorKind::Laurent => "laurent",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(GeneratorKind::Lattice),
            "markov" => Ok(GeneratorKind::Markov),
            "laurent" => Ok(GeneratorKind::Laurent),
            other => usage!("unknown generator kind `{other}`"),
        }
    }
}

/// Which kernel a generating set lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KernelTarget {
    /// Kernel of the splitting-map linearization on Y-tables of width `k`.
    Phi { k: usize },
    /// Kernel of the exponent-map linearization on Z-tables, width-2 row
    /// `(a, b)`.
    Psi { a: u64, b: u64 },
    /// Kernel of the full-map linearization on Y-tables.
    Pi { spec: MapSpec },
}

impl KernelTarget {
    /// The ring the moves of this target live in.
    pub fn ring(&self) -> RingTag {
        match self {
            KernelTarget::Phi { k } => RingTag::Y { k: *k },
            KernelTarget::Psi { .. } => RingTag::Z { k: 2 },
            KernelTarget::Pi { spec } => spec.tag_y(),
        }
    }

    /// Whether the vector `v` lies in the targeted kernel.
    pub fn contains_vector(&self, v: &ExponentTable) -> Result<bool> {
        let image = match self {
            KernelTarget::Phi { k } => linearize_phi(*k, v)?,
            KernelTarget::Psi { a, b } => {
                let spec = MapSpec::width2(*a, *b)?;
                linearize_psi(&spec, v)?
            }
            KernelTarget::Pi { spec } => linearize_pi(spec, v)?,
        };
        Ok(image.is_zero())
    }

    /// The underlying map data, when the target is the full map.
    pub fn pi_spec(&self) -> Option<&MapSpec> {
        match self {
            KernelTarget::Pi { spec } => Some(spec),
            _ => None,
        }
    }
}

impl std::fmt::Display for KernelTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelTarget::Phi { k } => write!(f, "splitting map, k = {k}"),
            KernelTarget::Psi { a, b } => write!(f, "exponent map, (a, b) = ({a}, {b})"),
            KernelTarget::Pi { spec } => write!(f, "full map {spec}"),
        }
    }
}

/// A finite set of binomial moves claimed to generate a kernel up to
/// symmetry.
///
/// Invariants, enforced at construction: every move lies in the target
/// kernel; moves are stored in canonical form (least orbit representative,
/// sign-insensitive); no two moves are equivalent modulo symmetry and sign.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    kind: GeneratorKind,
    target: KernelTarget,
    moves: Vec<Binomial>,
}

impl GeneratorSet {
    pub fn new(kind: GeneratorKind, target: KernelTarget, moves: Vec<Binomial>) -> Result<Self> {
        let ring = target.ring();
        let mut canonical = Vec::with_capacity(moves.len());
        let mut seen = BTreeSet::new();
        for (i, m) in moves.into_iter().enumerate() {
            ensure!(
                m.tag() == ring,
                "move {} lives in {}, expected {} for this target",
                i + 1,
                m.tag(),
                ring
            );
            ensure!(!m.is_zero(), "move {} is zero", i + 1);
            ensure!(
                target.contains_vector(&m.vector())?,
                "move {} is not in the kernel of the {target}",
                i + 1
            );
            // The canonical form packs the support into an initial segment,
            // so it only depends on the support size; pass the width to
            // admit moves whose labels are spread out.
            let ambient = (m.width() as usize).max(1);
            let canon = canonical_form_binomial(&m, ambient)?;
            ensure!(
                seen.insert(canon.clone()),
                "move {} duplicates an earlier move modulo symmetry and sign",
                i + 1
            );
            canonical.push(canon);
        }
        Ok(GeneratorSet { kind, target, moves: canonical })
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn target(&self) -> &KernelTarget {
        &self.target
    }

    pub fn moves(&self) -> &[Binomial] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn ring(&self) -> RingTag {
        self.target.ring()
    }

    /// Largest column index used by any move.
    pub fn width(&self) -> u32 {
        self.moves.iter().map(Binomial::width).max().unwrap_or(0)
    }

    /// Largest side degree over all moves.
    pub fn max_degree(&self) -> Int {
        self.moves
            .iter()
            .map(|m| {
                let (p, q) = m.degree_pair();
                p.max(q)
            })
            .max()
            .unwrap_or(0)
    }

    /// Whether `b` is equivalent (modulo symmetry and sign) to a stored
    /// move.
    pub fn contains_equivalent(&self, b: &Binomial) -> Result<bool> {
        let ambient = (b.width() as usize).max(1);
        let canon = canonical_form_binomial(b, ambient)?;
        Ok(self.moves.contains(&canon))
    }

    /// All oriented images of all moves under `S_n`, deduplicated and
    /// sorted.  This is the concrete move list that finite-truncation
    /// verification works with.
    pub fn orbit_expand(&self, n: u32) -> Result<Vec<Binomial>> {
        ensure!(
            self.width() <= n,
            "generator width {} exceeds the truncation {n}",
            self.width()
        );
        let mut all = BTreeSet::new();
        for m in &self.moves {
            for img in crate::symmetry::orbit_enumerate_binomial(m, n as usize)? {
                all.insert(img);
            }
        }
        Ok(all.into_iter().collect())
    }
}

/// Position pair data for a quadratic swap: base tuple `(1..k)`, with
/// position `r` rerouted to column `k+1` and position `s` to column `k+2`.
fn quad_move(k: usize, r: usize, s: usize) -> Result<Binomial> {
    let base: Vec<u32> = (1..=k as u32).collect();
    let mut at_r = base.clone();
    at_r[r] = k as u32 + 1;
    let mut at_s = base.clone();
    at_s[s] = k as u32 + 2;
    let mut at_both = at_r.clone();
    at_both[s] = k as u32 + 2;
    let tag = RingTag::Y { k };
    let v = ExponentTable::from_entries(
        tag,
        [
            (IndexTuple::new(base), 1),
            (IndexTuple::new(at_both), 1),
            (IndexTuple::new(at_r), -1),
            (IndexTuple::new(at_s), -1),
        ],
    )?;
    Ok(Binomial::from_vector(&v))
}

/// The quadratic swaps for width `k`: one move per position pair, jointly
/// generating the kernel of the splitting map as a lattice.
pub fn quad_generators(k: usize) -> Result<GeneratorSet> {
    ensure!(k >= 2, "quadratic swaps need tuple width k >= 2, got {k}");
    let mut moves = Vec::new();
    for r in 0..k {
        for s in r + 1..k {
            moves.push(quad_move(k, r, s)?);
        }
    }
    GeneratorSet::new(GeneratorKind::Lattice, KernelTarget::Phi { k }, moves)
}

/// The elementary column move `f_j`: position `j` (0-based) carries column
/// 1 on the plus side and column 2 on the minus side; the other positions
/// are filled with the fixed distinct columns `fill[0], fill[1], ..` in
/// increasing position order.
fn elementary_move(k: usize, j: usize, fill: &mut dyn Iterator<Item = u32>) -> (IndexTuple, IndexTuple) {
    let mut plus = Vec::with_capacity(k);
    let mut minus = Vec::with_capacity(k);
    for pos in 0..k {
        if pos == j {
            plus.push(1);
            minus.push(2);
        } else {
            let c = fill.next().expect("enough fill columns");
            plus.push(c);
            minus.push(c);
        }
    }
    (IndexTuple::new(plus), IndexTuple::new(minus))
}

/// `w = sum_j c_j f_j` with the standard fill columns `3..=k+1`, except
/// that positions listed in `wide_fill` use the fill columns `k+2..=2k`
/// instead (for the compact family).
fn bridge_move(k: usize, coeffs: &[Int], wide_fill: Option<usize>) -> Result<ExponentTable> {
    let tag = RingTag::Y { k };
    let mut v = ExponentTable::zero(tag);
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (plus, minus) = if wide_fill == Some(j) {
            let mut fill = (k as u32 + 2)..=(2 * k as u32);
            elementary_move(k, j, &mut fill)
        } else {
            let mut fill = 3..=(k as u32 + 1);
            elementary_move(k, j, &mut fill)
        };
        v.accumulate(plus, c)?;
        v.accumulate(minus, -c)?;
    }
    Ok(v)
}

/// Requires the single exponent row to be primitive (gcd 1); the families
/// below are stated for reduced rows.
fn require_reduced_row(spec: &MapSpec) -> Result<()> {
    ensure!(
        spec.m() == 1,
        "this family needs a single exponent row; got {} rows (see the multirow variant)",
        spec.m()
    );
    let g = spec.row_gcd();
    ensure!(
        g == 1,
        "exponent row {spec} has gcd {g} > 1; divide the row by {g} first — the map \
         factors through the reduced row composed with a power, so its kernel equals \
         the reduced row's kernel"
    );
    Ok(())
}

/// Lattice generators for a single reduced exponent row: the quadratic
/// swaps plus one bridge move per kernel basis vector of the row.
/// `(k^2 + k - 2) / 2` moves of width at most `k + 2`.
pub fn lattice_generators(spec: &MapSpec) -> Result<GeneratorSet> {
    require_reduced_row(spec)?;
    let k = spec.k();
    let mut moves = Vec::new();
    for r in 0..k {
        for s in r + 1..k {
            moves.push(quad_move(k, r, s)?);
        }
    }
    for coeffs in crate::maps::kernel_basis(&spec.exponent_matrix())? {
        moves.push(Binomial::from_vector(&bridge_move(k, &coeffs, None)?));
    }
    GeneratorSet::new(
        GeneratorKind::Lattice,
        KernelTarget::Pi { spec: spec.clone() },
        moves,
    )
}

/// Compact lattice generators: `k - 1` bridge moves of width at most `2k`,
/// no quadratic swaps.  Each kernel basis vector is paired with a distinct
/// coordinate in its support (a system of distinct representatives), and
/// that coordinate's elementary move uses fresh fill columns so the bridge
/// also absorbs the quadratic relations.
pub fn lattice_generators_compact(spec: &MapSpec) -> Result<GeneratorSet> {
    require_reduced_row(spec)?;
    let k = spec.k();
    let basis = crate::maps::kernel_basis(&spec.exponent_matrix())?;
    let reps = distinct_representatives(&basis, k);
    let mut moves = Vec::new();
    for (l, coeffs) in basis.iter().enumerate() {
        moves.push(Binomial::from_vector(&bridge_move(k, coeffs, Some(reps[l]))?));
    }
    GeneratorSet::new(
        GeneratorKind::Lattice,
        KernelTarget::Pi { spec: spec.clone() },
        moves,
    )
}

/// A system of distinct representatives: for each basis vector an index
/// with nonzero entry, all distinct.  Exists because the vectors are
/// linearly independent (any `r` of them touch at least `r` coordinates);
/// found by augmenting paths.
fn distinct_representatives(basis: &[Vec<Int>], k: usize) -> Vec<usize> {
    let mut owner: Vec<Option<usize>> = vec![None; k]; // coordinate -> vector
    fn augment(
        l: usize,
        basis: &[Vec<Int>],
        owner: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for (j, &c) in basis[l].iter().enumerate() {
            if c == 0 || visited[j] {
                continue;
            }
            visited[j] = true;
            if owner[j].is_none()
                || augment(owner[j].unwrap(), basis, owner, visited)
            {
                owner[j] = Some(l);
                return true;
            }
        }
        false
    }
    for l in 0..basis.len() {
        let mut visited = vec![false; k];
        let ok = augment(l, basis, &mut owner, &mut visited);
        assert!(ok, "kernel basis vectors are independent, so an SDR must exist");
    }
    let mut reps = vec![usize::MAX; basis.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(l) = *o {
            reps[l] = j;
        }
    }
    reps
}

/// Lattice generators for a multirow exponent matrix: quadratic swaps plus
/// one bridge move per kernel basis vector of the matrix.  A single-row
/// matrix delegates to [`lattice_generators`]; a matrix with zero kernel
/// yields the quadratic swaps alone.
pub fn multirow_lattice_generators(spec: &MapSpec) -> Result<GeneratorSet> {
    if spec.m() == 1 {
        return lattice_generators(spec);
    }
    let k = spec.k();
    let mut moves = Vec::new();
    for r in 0..k {
        for s in r + 1..k {
            moves.push(quad_move(k, r, s)?);
        }
    }
    for coeffs in crate::maps::kernel_basis(&spec.exponent_matrix())? {
        moves.push(Binomial::from_vector(&bridge_move(k, &coeffs, None)?));
    }
    GeneratorSet::new(
        GeneratorKind::Lattice,
        KernelTarget::Pi { spec: spec.clone() },
        moves,
    )
}

/// Laurent generating pair for a reduced width-2 row `(a, b)`: the basic
/// quadratic swap and the width-3 bridge
/// `y_21^b y_31^(a-b) - y_12^b y_32^(a-b)`.  After inverting the variables
/// these two generate the whole kernel ideal.
pub fn laurent_width2_pair(a: u64, b: u64) -> Result<GeneratorSet> {
    let spec = MapSpec::width2(a, b)?;
    require_reduced_row(&spec)?;
    let tag = RingTag::Y { k: 2 };
    let plus = ExponentTable::from_entries(
        tag,
        [(tuple2(2, 1), b as Int), (tuple2(3, 1), (a - b) as Int)],
    )?;
    let minus = ExponentTable::from_entries(
        tag,
        [(tuple2(1, 2), b as Int), (tuple2(3, 2), (a - b) as Int)],
    )?;
    let moves = vec![quad_move(2, 0, 1)?, Binomial::new(plus, minus)?];
    GeneratorSet::new(GeneratorKind::Laurent, KernelTarget::Pi { spec }, moves)
}

fn tuple2(i: u32, j: u32) -> IndexTuple {
    IndexTuple::new(vec![i, j])
}

/// Markov basis of the splitting map for width 2: the basic quadratic swap
/// and the 3-cycle reversal cubic.
pub fn phi_markov_basis() -> Result<GeneratorSet> {
    let tag = RingTag::Y { k: 2 };
    let cubic_plus = ExponentTable::from_entries(
        tag,
        [(tuple2(1, 2), 1), (tuple2(2, 3), 1), (tuple2(3, 1), 1)],
    )?;
    let cubic_minus = ExponentTable::from_entries(
        tag,
        [(tuple2(2, 1), 1), (tuple2(3, 2), 1), (tuple2(1, 3), 1)],
    )?;
    let moves = vec![quad_move(2, 0, 1)?, Binomial::new(cubic_plus, cubic_minus)?];
    GeneratorSet::new(GeneratorKind::Markov, KernelTarget::Phi { k: 2 }, moves)
}

/// Multisets of pairs `(p, q) != (0, 0)` with componentwise sum
/// `(p_total, q_total)`, each multiset listed in decreasing lexicographic
/// pair order.
pub(crate) fn pair_partitions(p_total: u64, q_total: u64) -> Vec<Vec<(u64, u64)>> {
    fn rec(
        p_rem: u64,
        q_rem: u64,
        max_pair: (u64, u64),
        cur: &mut Vec<(u64, u64)>,
        out: &mut Vec<Vec<(u64, u64)>>,
    ) {
        if p_rem == 0 && q_rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (0..=p_rem.min(max_pair.0)).rev() {
            let q_hi = if p == max_pair.0 { q_rem.min(max_pair.1) } else { q_rem };
            for q in (0..=q_hi).rev() {
                if p == 0 && q == 0 {
                    continue;
                }
                cur.push((p, q));
                rec(p_rem - p, q_rem - q, (p, q), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p_total, q_total, (p_total, q_total), &mut Vec::new(), &mut out);
    out
}

/// The two structural families generating the kernel of the exponent map
/// for a reduced width-2 row `(a, b)`, as Z-ring binomials `z^A - z^B`.
///
/// Type (i), for `0 <= n <= a-b` and each pair multiset with
/// `sum p = a-b-n`, `sum q = n`:
/// `A = [[b+n, n, p..], [0, a, q..]]`, `B = [[n, b+n, p..], [a, 0, q..]]`,
/// fresh columns from 3 in decreasing lexicographic pair order.
/// Type (ii), for `1 <= n <= b`:
/// `A = [[b, 0, a-b+n], [0, a, n]]`, `B = [[0, b, a-b+n], [a, 0, n]]`.
///
/// Both sides of every move are matching-monoid members.
pub fn psi_kernel_families(a: u64, b: u64) -> Result<GeneratorSet> {
    let spec = MapSpec::width2(a, b)?;
    require_reduced_row(&spec)?;
    let mut moves = Vec::new();
    for n in 0..=(a - b) {
        for partition in pair_partitions(a - b - n, n) {
            let mut a_rows = vec![vec![b + n, n], vec![0, a]];
            let mut b_rows = vec![vec![n, b + n], vec![a, 0]];
            for &(p, q) in &partition {
                a_rows[0].push(p);
                a_rows[1].push(q);
                b_rows[0].push(p);
                b_rows[1].push(q);
            }
            moves.push(z_move(&a_rows, &b_rows)?);
        }
    }
    for n in 1..=b {
        let a_rows = vec![vec![b, 0, a - b + n], vec![0, a, n]];
        let b_rows = vec![vec![0, b, a - b + n], vec![a, 0, n]];
        moves.push(z_move(&a_rows, &b_rows)?);
    }
    GeneratorSet::new(GeneratorKind::Markov, KernelTarget::Psi { a, b }, moves)
}

/// Builds the Z-binomial `z^A - z^B` from dense rows, asserting that both
/// sides are matching-monoid members.
fn z_move(a_rows: &[Vec<u64>], b_rows: &[Vec<u64>]) -> Result<Binomial> {
    let plus = MatchingTable::from_rows(a_rows)?;
    let minus = MatchingTable::from_rows(b_rows)?;
    ensure!(
        matching_member(&plus).is_some() && matching_member(&minus).is_some(),
        "both sides of an exponent-map move must be matching members"
    );
    Binomial::new(plus.into_table(), minus.into_table())
}

/// Markov basis of the full map for a reduced width-2 row `(a, b)`:
///
/// 1. the basic quadratic swap,
/// 2. the 3-cycle reversal cubic,
/// 3. one move per type-(i) family member: `y_12^(b+n) prod_j y_j2^(p_j)
///    y_2j^(q_j) - y_21^(b+n) prod_j y_j1^(p_j) y_1j^(q_j)` over fresh
///    columns `j = 3, 4, ..`,
/// 4. one move per type-(ii) member: `y_12^(b-n) y_13^n y_32^(a-b+n) -
///    y_21^(b-n) y_23^n y_31^(a-b+n)` for `1 <= n <= b`.
///
/// Width is `max(4, a-b+2)` and the maximum degree is `max(a+b, 2a-b)`.
pub fn markov_width2(a: u64, b: u64) -> Result<GeneratorSet> {
    let spec = MapSpec::width2(a, b)?;
    require_reduced_row(&spec)?;
    let tag = RingTag::Y { k: 2 };
    let mut moves = vec![quad_move(2, 0, 1)?];
    {
        let cubic = phi_markov_basis()?;
        moves.push(cubic.moves()[1].clone());
    }
    for n in 0..=(a - b) {
        for partition in pair_partitions(a - b - n, n) {
            let mut plus = vec![(tuple2(1, 2), (b + n) as Int)];
            let mut minus = vec![(tuple2(2, 1), (b + n) as Int)];
            for (idx, &(p, q)) in partition.iter().enumerate() {
                let j = idx as u32 + 3;
                if p != 0 {
                    plus.push((tuple2(j, 2), p as Int));
                    minus.push((tuple2(j, 1), p as Int));
                }
                if q != 0 {
                    plus.push((tuple2(2, j), q as Int));
                    minus.push((tuple2(1, j), q as Int));
                }
            }
            moves.push(Binomial::new(
                ExponentTable::from_entries(tag, plus)?,
                ExponentTable::from_entries(tag, minus)?,
            )?);
        }
    }
    for n in 1..=b {
        let plus = ExponentTable::from_entries(
            tag,
            [
                (tuple2(1, 2), (b - n) as Int),
                (tuple2(1, 3), n as Int),
                (tuple2(3, 2), (a - b + n) as Int),
            ],
        )?;
        let minus = ExponentTable::from_entries(
            tag,
            [
                (tuple2(2, 1), (b - n) as Int),
                (tuple2(2, 3), n as Int),
                (tuple2(3, 1), (a - b + n) as Int),
            ],
        )?;
        moves.push(Binomial::new(plus, minus)?);
    }
    GeneratorSet::new(GeneratorKind::Markov, KernelTarget::Pi { spec }, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{phi_apply, pi_apply};
    use crate::tuple;

    #[test]
    fn quad_counts_and_width() {
        for k in 2..=5 {
            let g = quad_generators(k).unwrap();
            assert_eq!(g.len(), k * (k - 1) / 2);
            assert!(g.width() <= k as u32 + 2);
            assert_eq!(g.kind(), GeneratorKind::Lattice);
        }
        // k = 2: the single move is the basic quadric.
        let g = quad_generators(2).unwrap();
        let v = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [
                (tuple![1, 2], 1),
                (tuple![3, 4], 1),
                (tuple![1, 4], -1),
                (tuple![3, 2], -1),
            ],
        )
        .unwrap();
        assert!(g.contains_equivalent(&Binomial::from_vector(&v)).unwrap());
    }

    #[test]
    fn quads_die_under_the_splitting_map() {
        for k in 2..=4 {
            for m in quad_generators(k).unwrap().moves() {
                assert_eq!(
                    phi_apply(k, m.plus()).unwrap(),
                    phi_apply(k, m.minus()).unwrap()
                );
            }
        }
    }

    #[test]
    fn lattice_family_counts() {
        for (a, b) in [(2, 1), (3, 2), (5, 2), (7, 4)] {
            let spec = MapSpec::width2(a, b).unwrap();
            let g = lattice_generators(&spec).unwrap();
            assert_eq!(g.len(), (4 + 2 - 2) / 2); // (k^2 + k - 2)/2 for k = 2
            assert!(g.width() <= 4);
        }
        let spec = MapSpec::single_row(vec![1, 2, 4]).unwrap();
        let g = lattice_generators(&spec).unwrap();
        assert_eq!(g.len(), (9 + 3 - 2) / 2);
        assert!(g.width() <= 5);
    }

    #[test]
    fn bridge_move_for_2_1() {
        // Kernel of [2 1] is spanned by (-1, 2); the bridge is
        // -f_1 + 2 f_2 = -(e_13 - e_23) + 2(e_31 - e_32).
        let spec = MapSpec::width2(2, 1).unwrap();
        let g = lattice_generators(&spec).unwrap();
        let expected = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [
                (tuple![1, 3], -1),
                (tuple![2, 3], 1),
                (tuple![3, 1], 2),
                (tuple![3, 2], -2),
            ],
        )
        .unwrap();
        assert!(g
            .contains_equivalent(&Binomial::from_vector(&expected))
            .unwrap());
    }

    #[test]
    fn compact_family_is_smaller_and_wider() {
        let spec = MapSpec::width2(2, 1).unwrap();
        let g = lattice_generators_compact(&spec).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.width() <= 4);
        // w' = -f'_1 + 2 f_2 = -(e_14 - e_24) + 2(e_31 - e_32).
        let expected = ExponentTable::from_entries(
            RingTag::Y { k: 2 },
            [
                (tuple![1, 4], -1),
                (tuple![2, 4], 1),
                (tuple![3, 1], 2),
                (tuple![3, 2], -2),
            ],
        )
        .unwrap();
        assert!(g
            .contains_equivalent(&Binomial::from_vector(&expected))
            .unwrap());
        let spec3 = MapSpec::single_row(vec![1, 2, 4]).unwrap();
        let g3 = lattice_generators_compact(&spec3).unwrap();
        assert_eq!(g3.len(), 2);
        assert!(g3.width() <= 6);
    }

    #[test]
    fn compact_family_with_six_exponents_constructs_quickly() {
        // The bridge moves here have supports of up to twelve columns;
        // construction canonicalizes every move, so this test guards the
        // canonicalizer against falling back to full relabeling scans.
        let spec = MapSpec::single_row((1..=6).collect()).unwrap();
        let g = lattice_generators_compact(&spec).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.width() <= 12);
    }

    #[test]
    fn gcd_gate_with_hint() {
        let spec = MapSpec::width2(4, 2).unwrap();
        let err = lattice_generators(&spec).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("gcd 2"), "missing gcd in: {msg}");
        assert!(msg.contains("divide the row"), "missing hint in: {msg}");
    }

    #[test]
    fn multirow_family() {
        let spec = MapSpec::multi_row(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let g = multirow_lattice_generators(&spec).unwrap();
        // 3 quadratic swaps + 1 bridge (kernel rank 1).
        assert_eq!(g.len(), 4);
        for m in g.moves() {
            assert!(linearize_pi(&spec, &m.vector()).unwrap().is_zero());
        }
        // Single-row delegation.
        let one = MapSpec::width2(3, 2).unwrap();
        assert_eq!(
            multirow_lattice_generators(&one).unwrap(),
            lattice_generators(&one).unwrap()
        );
    }

    #[test]
    fn laurent_pair_shape() {
        let g = laurent_width2_pair(3, 2).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.kind(), GeneratorKind::Laurent);
        for m in g.moves() {
            let spec = g.target().pi_spec().unwrap();
            assert_eq!(
                pi_apply(spec, m.plus()).unwrap(),
                pi_apply(spec, m.minus()).unwrap()
            );
        }
        assert!(laurent_width2_pair(4, 2).is_err());
        assert!(laurent_width2_pair(2, 2).is_err());
    }

    #[test]
    fn splitting_markov_basis_shape() {
        let g = phi_markov_basis().unwrap();
        assert_eq!(g.len(), 2);
        let cubic = &g.moves()[1];
        let (p, q) = cubic.degree_pair();
        assert_eq!((p, q), (3, 3));
    }

    #[test]
    fn pair_partition_counts() {
        assert_eq!(pair_partitions(1, 0).len(), 1);
        assert_eq!(pair_partitions(0, 2).len(), 2); // {(0,2)}, {(0,1),(0,1)}
        assert_eq!(pair_partitions(1, 1).len(), 2); // {(1,1)}, {(1,0),(0,1)}
        assert_eq!(pair_partitions(2, 0).len(), 2);
        // Oracle: brute-force multiset count via sorted tuples.
        fn brute(p: u64, q: u64) -> usize {
            use std::collections::BTreeSet;
            let mut seen = BTreeSet::new();
            // compositions into at most p+q parts, then sort to a multiset
            fn rec(
                p_rem: u64,
                q_rem: u64,
                cur: &mut Vec<(u64, u64)>,
                seen: &mut BTreeSet<Vec<(u64, u64)>>,
            ) {
                if p_rem == 0 && q_rem == 0 {
                    let mut key = cur.clone();
                    key.sort();
                    seen.insert(key);
                    return;
                }
                for dp in 0..=p_rem {
                    for dq in 0..=q_rem {
                        if dp == 0 && dq == 0 {
                            continue;
                        }
                        cur.push((dp, dq));
                        rec(p_rem - dp, q_rem - dq, cur, seen);
                        cur.pop();
                    }
                }
            }
            rec(p, q, &mut Vec::new(), &mut seen);
            seen.len()
        }
        for (p, q) in [(0, 3), (3, 0), (2, 1), (2, 2), (3, 2)] {
            assert_eq!(pair_partitions(p, q).len(), brute(p, q), "({p}, {q})");
        }
        // Pairs are listed in decreasing lexicographic order.
        for part in pair_partitions(3, 2) {
            for w in part.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn exponent_map_family_counts() {
        assert_eq!(psi_kernel_families(2, 1).unwrap().len(), 3);
        assert_eq!(psi_kernel_families(3, 1).unwrap().len(), 7);
        assert_eq!(psi_kernel_families(4, 2).unwrap_err().to_string().contains("gcd"), true);
    }

    #[test]
    fn exponent_map_family_contains_spec_example() {
        // Type (ii), (a, b) = (2, 1), n = 1.
        let g = psi_kernel_families(2, 1).unwrap();
        let a = MatchingTable::from_rows(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let b = MatchingTable::from_rows(&[vec![0, 1, 2], vec![2, 0, 1]]).unwrap();
        let m = Binomial::new(a.into_table(), b.into_table()).unwrap();
        assert!(g.contains_equivalent(&m).unwrap());
        // Every move has matching members on both sides and equal images.
        let spec = MapSpec::width2(2, 1).unwrap();
        for m in g.moves() {
            let p = MatchingTable::new(m.plus().clone()).unwrap();
            let q = MatchingTable::new(m.minus().clone()).unwrap();
            assert!(matching_member(&p).is_some());
            assert!(matching_member(&q).is_some());
            assert_eq!(
                crate::maps::psi_apply(&spec, &p).unwrap(),
                crate::maps::psi_apply(&spec, &q).unwrap()
            );
        }
    }

    #[test]
    fn full_markov_family_counts_and_bounds() {
        for (a, b, count) in [(2, 1, 5), (3, 1, 9), (3, 2, 6)] {
            let g = markov_width2(a, b).unwrap();
            assert_eq!(g.len(), count, "count for ({a}, {b})");
            assert_eq!(g.width() as u64, 4u64.max(a - b + 2), "width for ({a}, {b})");
            assert_eq!(
                g.max_degree() as u64,
                (a + b).max(2 * a - b),
                "degree for ({a}, {b})"
            );
        }
    }

    #[test]
    fn full_markov_moves_for_2_1() {
        let g = markov_width2(2, 1).unwrap();
        let tag = RingTag::Y { k: 2 };
        let expect = [
            // type (iii) n = 0: y_12 y_32 - y_21 y_31
            (vec![(tuple![1, 2], 1), (tuple![3, 2], 1)], vec![(tuple![2, 1], 1), (tuple![3, 1], 1)]),
            // type (iii) n = 1: y_12^2 y_23 - y_21^2 y_13
            (vec![(tuple![1, 2], 2), (tuple![2, 3], 1)], vec![(tuple![2, 1], 2), (tuple![1, 3], 1)]),
            // type (iv) n = 1: y_13 y_32^2 - y_23 y_31^2
            (vec![(tuple![1, 3], 1), (tuple![3, 2], 2)], vec![(tuple![2, 3], 1), (tuple![3, 1], 2)]),
        ];
        for (plus, minus) in expect {
            let m = Binomial::new(
                ExponentTable::from_entries(tag, plus).unwrap(),
                ExponentTable::from_entries(tag, minus).unwrap(),
            )
            .unwrap();
            assert!(g.contains_equivalent(&m).unwrap(), "missing {m}");
        }
    }

    #[test]
    fn generator_set_rejects_non_kernel_moves() {
        let spec = MapSpec::width2(2, 1).unwrap();
        let not_in_kernel = Binomial::new(
            ExponentTable::unit(RingTag::Y { k: 2 }, tuple![1, 2]).unwrap(),
            ExponentTable::unit(RingTag::Y { k: 2 }, tuple![2, 1]).unwrap(),
        )
        .unwrap();
        let err = GeneratorSet::new(
            GeneratorKind::Markov,
            KernelTarget::Pi { spec },
            vec![not_in_kernel],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not in the kernel"));
    }

    #[test]
    fn generator_set_rejects_orbit_duplicates() {
        let q = quad_move(2, 0, 1).unwrap();
        let sigma = crate::symmetry::Permutation::from_images(vec![2, 3, 4, 1]).unwrap();
        let moved = crate::symmetry::act_binomial(&sigma, &q).unwrap().swapped();
        let err = GeneratorSet::new(
            GeneratorKind::Lattice,
            KernelTarget::Phi { k: 2 },
            vec![q, moved],
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicates"));
    }

    use crate::maps::linearize_pi;

    #[test]
    fn all_pi_families_lie_in_their_kernels() {
        // GeneratorSet::new already asserts this; exercise a spread of
        // parameters end to end anyway.
        for (a, b) in [(2, 1), (3, 1), (3, 2), (5, 2), (5, 3), (7, 5)] {
            let spec = MapSpec::width2(a, b).unwrap();
            for g in [
                lattice_generators(&spec).unwrap(),
                lattice_generators_compact(&spec).unwrap(),
                markov_width2(a, b).unwrap(),
                laurent_width2_pair(a, b).unwrap(),
            ] {
                for m in g.moves() {
                    assert!(linearize_pi(&spec, &m.vector()).unwrap().is_zero());
                }
            }
        }
    }
}
