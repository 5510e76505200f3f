//! Finite symmetric-group action on column indices.
//!
//! A permutation of `1..=n` acts on an exponent table by relabeling the
//! column positions of every index tuple (row labels — Z slots, X groups —
//! stay put).  Orbits are enumerated by brute force over injective
//! relabelings of the (small) column support, which is exact and fast for
//! the table sizes that occur in practice.
//!
//! Canonical forms do *not* scan the whole orbit (a move of support size
//! `s` has up to `s!` relabelings, which is prohibitive for the wide
//! families).  Instead the support columns are partitioned by iterated
//! signature refinement: a column's signature lists, for every tuple
//! position it fills, the table it occurs in, the tuple's coefficient, the
//! position itself, and the tuple's shape with each column replaced by its
//! current class (row labels stay literal), and the partition is re-split
//! by signature until stable.  Signatures are label-invariant, so the
//! ordered class list is carried along by any relabeling.  The canonical
//! form is then the structurally least image over the bijections that send
//! the `i`-th class onto the `i`-th consecutive block of `1..=s` — a
//! product of within-class factorials, which collapses to a handful of
//! candidates once refinement separates the columns (fully symmetric moves
//! keep small classes; the basic quadratic swap keeps two classes of two).
//! The result is a deterministic orbit member with its support packed into
//! `1..=s`, constant on orbits and independent of the truncation `n`
//! whenever `n` admits the table at all.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{ensure, usage};
use crate::tables::{Binomial, ExponentTable, IndexTuple};
use crate::{Int, Result};

/// A permutation of `1..=n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    /// `images[i - 1]` is the image of `i`.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u32).collect() }
    }

    /// The transposition swapping `i` and `j` inside `S_n`.
    pub fn transposition(n: usize, i: u32, j: u32) -> Result<Self> {
        ensure!(
            (1..=n as u32).contains(&i) && (1..=n as u32).contains(&j),
            "transposition indices ({i} {j}) must lie in 1..={n}"
        );
        let mut p = Self::identity(n);
        p.images.swap(i as usize - 1, j as usize - 1);
        Ok(p)
    }

    /// Builds a permutation from its image vector `images[i-1] = sigma(i)`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let seen: BTreeSet<u32> = images.iter().copied().collect();
        ensure!(
            seen.len() == images.len() && images.iter().all(|&v| (1..=n).contains(&v)),
            "image vector is not a permutation of 1..={n}"
        );
        Ok(Permutation { images })
    }

    /// Uniformly random element of `S_n`.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        use rand::seq::SliceRandom;
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// Largest index moved-or-fixed explicitly (the `n` of `S_n`).
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `i`; indices beyond the degree are fixed.
    pub fn apply(&self, i: u32) -> u32 {
        self.images.get(i as usize - 1).copied().unwrap_or(i)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.degree().max(other.degree());
        let images = (1..=n as u32).map(|i| self.apply(other.apply(i))).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Cycle notation for display, e.g. `(1 2)(3 4 5)`; identity prints `()`.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 1..=self.degree() as u32 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start as usize - 1] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur as usize - 1] = true;
                cyc.push(cur);
                cur = self.apply(cur);
            }
            out.push('(');
            out.push_str(&cyc.iter().map(|v| v.to_string()).join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Relabels the column indices of `t` through `sigma`.  Errors when the
/// table mentions a column beyond the permutation's degree.
pub fn act(sigma: &Permutation, t: &ExponentTable) -> Result<ExponentTable> {
    ensure!(
        t.width() as usize <= sigma.degree(),
        "table width {} exceeds the permutation degree {}",
        t.width(),
        sigma.degree()
    );
    relabel(t, &|i| sigma.apply(i))
}

/// Relabels both sides of a binomial.
pub fn act_binomial(sigma: &Permutation, b: &Binomial) -> Result<Binomial> {
    Binomial::new(act(sigma, b.plus())?, act(sigma, b.minus())?)
}

/// Applies an arbitrary injective column relabeling.  Internal building
/// block for both the group action and orbit enumeration.
fn relabel(t: &ExponentTable, map: &dyn Fn(u32) -> u32) -> Result<ExponentTable> {
    let tag = t.tag();
    ExponentTable::from_entries(
        tag,
        t.entries().map(|(tuple, c)| {
            let ix: Vec<u32> = tuple
                .indices()
                .iter()
                .enumerate()
                .map(|(pos, &i)| if tag.is_column_position(pos) { map(i) } else { i })
                .collect();
            (IndexTuple::new(ix), c)
        }),
    )
}

/// Iterates all injective maps from `support` into `1..=n` as lookup maps.
/// Enumeration order is deterministic (lexicographic in the image vector).
fn injections(support: &[u32], n: usize) -> impl Iterator<Item = BTreeMap<u32, u32>> + '_ {
    let s = support.len();
    (1..=n as u32)
        .permutations(s)
        .map(move |img| support.iter().copied().zip(img).collect())
}

/// One incidence of a support column inside a table list: the table index,
/// the coefficient of the tuple, the position the column fills, and the
/// tuple's shape with every column position replaced by the current class
/// of the column standing there (`true` marks) while row labels stay
/// literal (`false` marks).
type Incidence = (usize, Int, usize, Vec<(bool, u64)>);

/// Partitions `support` into the classes that iterated signature
/// refinement fails to separate, ordered by their (label-invariant) final
/// signatures; class members are listed in ascending column order.
///
/// Constancy along orbits: relabeling the tables through a bijection `phi`
/// of the support carries the incidence records of column `c` to exactly
/// those of `phi(c)` — round by round, by induction, since round 0 puts
/// everything in one class and each later round only consults invariant
/// data and the previous (inductively corresponding) classes.  The ordered
/// class list of the relabeled tables is therefore the `phi`-image of the
/// original one.
fn signature_classes(tables: &[&ExponentTable], support: &[u32]) -> Vec<Vec<u32>> {
    if support.is_empty() {
        return Vec::new();
    }
    let mut rank: BTreeMap<u32, usize> = support.iter().map(|&c| (c, 0)).collect();
    let mut class_count = 1usize;
    loop {
        let mut sigs: Vec<(usize, Vec<Incidence>, u32)> = Vec::with_capacity(support.len());
        for &c in support {
            let mut records: Vec<Incidence> = Vec::new();
            for (ti, t) in tables.iter().enumerate() {
                let tag = t.tag();
                for (tuple, coef) in t.entries() {
                    let ix = tuple.indices();
                    for (p, &i) in ix.iter().enumerate() {
                        if tag.is_column_position(p) && i == c {
                            let masked = ix
                                .iter()
                                .enumerate()
                                .map(|(q, &j)| {
                                    if tag.is_column_position(q) {
                                        (true, rank[&j] as u64)
                                    } else {
                                        (false, u64::from(j))
                                    }
                                })
                                .collect();
                            records.push((ti, coef, p, masked));
                        }
                    }
                }
            }
            records.sort();
            sigs.push((rank[&c], records, c));
        }
        // Sorting by (previous rank, records) refines the previous
        // partition and keeps the class order consistent with it.
        sigs.sort();
        let mut current = 0usize;
        for i in 0..sigs.len() {
            if i > 0 && (&sigs[i - 1].0, &sigs[i - 1].1) != (&sigs[i].0, &sigs[i].1) {
                current += 1;
            }
            rank.insert(sigs[i].2, current);
        }
        let new_count = current + 1;
        if new_count == class_count {
            break;
        }
        class_count = new_count;
    }
    let mut classes = vec![Vec::new(); class_count];
    for &c in support {
        classes[rank[&c]].push(c);
    }
    classes
}

/// All bijections from the support onto `1..=s` that send the `i`-th class
/// onto the `i`-th consecutive label block, as lookup maps.  Enumeration
/// order is deterministic.
fn class_relabelings(classes: &[Vec<u32>]) -> impl Iterator<Item = BTreeMap<u32, u32>> {
    let classes = classes.to_vec();
    let mut blocks: Vec<Vec<Vec<u32>>> = Vec::with_capacity(classes.len());
    let mut next: u32 = 1;
    for cls in &classes {
        let labels: Vec<u32> = (next..next + cls.len() as u32).collect();
        next += cls.len() as u32;
        blocks.push(labels.into_iter().permutations(cls.len()).collect());
    }
    blocks.into_iter().multi_cartesian_product().map(move |choice| {
        classes
            .iter()
            .zip(choice)
            .flat_map(|(cls, img)| cls.iter().copied().zip(img))
            .collect()
    })
}

/// A canonical representative of the `S_n`-orbit of `t`: the structurally
/// least image over the signature-guided relabelings described in the
/// module docs.  Constant on the orbit, itself an orbit member with the
/// support packed into `1..=s`.
///
/// Requires `width(t) <= n`; the result is independent of `n` beyond that
/// (see the module docs), so it is *the* canonical form of `t` under the
/// infinite symmetric group as well.
pub fn canonical_form(t: &ExponentTable, n: usize) -> Result<ExponentTable> {
    ensure!(
        t.width() as usize <= n,
        "table width {} exceeds the truncation {n}",
        t.width(),
    );
    let support: Vec<u32> = t.support_columns().into_iter().collect();
    let classes = signature_classes(&[t], &support);
    let mut best: Option<ExponentTable> = None;
    for map in class_relabelings(&classes) {
        let img = relabel(t, &|i| map[&i]).expect("bijective relabeling preserves validity");
        if best.as_ref().map_or(true, |b| img < *b) {
            best = Some(img);
        }
    }
    Ok(best.unwrap_or_else(|| t.clone()))
}

/// Canonical form of a binomial move: canonical over the `S_n`-orbit *and*
/// over the sign swap `plus <-> minus`, so a move and its reverse share one
/// form.  The two orientations are canonicalized independently (their
/// signatures differ, because incidences record which side a tuple lives
/// on) and the structurally lesser result wins.
pub fn canonical_form_binomial(b: &Binomial, n: usize) -> Result<Binomial> {
    ensure!(
        b.width() as usize <= n,
        "binomial width {} exceeds the truncation {n}",
        b.width(),
    );
    let support: Vec<u32> = b.support_columns().into_iter().collect();
    let mut best: Option<Binomial> = None;
    for (first, second) in [(b.plus(), b.minus()), (b.minus(), b.plus())] {
        let classes = signature_classes(&[first, second], &support);
        for map in class_relabelings(&classes) {
            let plus = relabel(first, &|i| map[&i]).expect("bijective relabeling");
            let minus = relabel(second, &|i| map[&i]).expect("bijective relabeling");
            let cand = Binomial::new(plus, minus).expect("relabeling preserves validity");
            if best.as_ref().map_or(true, |cur| cand < *cur) {
                best = Some(cand);
            }
        }
    }
    Ok(best.unwrap_or_else(|| b.clone()))
}

/// All distinct images of `t` under `S_n`, sorted structurally.
pub fn orbit_enumerate(t: &ExponentTable, n: usize) -> Result<Vec<ExponentTable>> {
    ensure!(
        t.width() as usize <= n,
        "table width {} exceeds the truncation {n}",
        t.width(),
    );
    let support: Vec<u32> = t.support_columns().into_iter().collect();
    let mut orbit = BTreeSet::new();
    for map in injections(&support, n) {
        orbit.insert(relabel(t, &|i| map[&i]).expect("injective relabeling"));
    }
    if orbit.is_empty() {
        orbit.insert(t.clone());
    }
    Ok(orbit.into_iter().collect())
}

/// All distinct *oriented* images of a binomial under `S_n` (no sign
/// quotient), sorted structurally.
pub fn orbit_enumerate_binomial(b: &Binomial, n: usize) -> Result<Vec<Binomial>> {
    ensure!(
        b.width() as usize <= n,
        "binomial width {} exceeds the truncation {n}",
        b.width(),
    );
    let support: Vec<u32> = b.support_columns().into_iter().collect();
    let mut orbit = BTreeSet::new();
    for map in injections(&support, n) {
        let plus = relabel(b.plus(), &|i| map[&i]).expect("injective relabeling");
        let minus = relabel(b.minus(), &|i| map[&i]).expect("injective relabeling");
        orbit.insert(Binomial::new(plus, minus).expect("relabeling preserves disjointness"));
    }
    if orbit.is_empty() {
        orbit.insert(b.clone());
    }
    Ok(orbit.into_iter().collect())
}

/// Streams every image of `b` under injective relabelings of its support
/// into `[1..=n]`, without materializing or deduplicating the orbit
/// (repeats occur when `b` has column symmetries; consumers that fold
/// images into a lattice or search for one hit do not care).  The visitor
/// returns `true` to stop early; the function reports whether any call did.
pub fn orbit_visit_binomial<F>(b: &Binomial, n: usize, mut f: F) -> Result<bool>
where
    F: FnMut(&Binomial) -> Result<bool>,
{
    ensure!(
        b.width() as usize <= n,
        "binomial width {} exceeds the truncation {n}",
        b.width(),
    );
    let support: Vec<u32> = b.support_columns().into_iter().collect();
    if support.is_empty() {
        return f(b);
    }
    for map in injections(&support, n) {
        let plus = relabel(b.plus(), &|i| map[&i]).expect("injective relabeling");
        let minus = relabel(b.minus(), &|i| map[&i]).expect("injective relabeling");
        let img = Binomial::new(plus, minus).expect("relabeling preserves validity");
        if f(&img)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Groups a list of moves by orbit-and-sign equivalence.  Returns one
/// `(canonical form, multiplicity)` pair per class, sorted by canonical
/// form.
pub fn orbit_reduce(moves: &[Binomial]) -> Result<Vec<(Binomial, usize)>> {
    let mut classes: BTreeMap<Binomial, usize> = BTreeMap::new();
    for b in moves {
        // The canonical form packs the support into an initial segment, so
        // it only depends on the support size; pass the width to admit
        // moves whose labels are spread out.
        let ambient = (b.width() as usize).max(1);
        let canon = canonical_form_binomial(b, ambient)?;
        *classes.entry(canon).or_insert(0) += 1;
    }
    Ok(classes.into_iter().collect())
}

/// All `n!` permutations of `1..=n`, in lexicographic image order.  Intended
/// for small-`n` oracles and tests.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|images| Permutation { images })
}
