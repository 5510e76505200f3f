//! Sparse integer exponent tables.
//!
//! Everything downstream — monomials, binomial moves, multidegrees, matching
//! tables — is a finitely supported map from index tuples to integers.  This
//! module fixes that representation once: a [`BTreeMap`] from [`IndexTuple`]
//! to a nonzero scalar, tagged by the ring the tuple shape belongs to
//! ([`RingTag`]).  Keeping the map sorted gives a canonical in-memory form,
//! a total structural order, and a deterministic text serialization for
//! free.
//!
//! Coefficient zero is never stored: inserting a cancellation removes the
//! entry, so `t == u` is exactly "same formal linear combination".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{ensure, usage};
use crate::{add as checked_add, Int, Result};

/// Identifies the ring an exponent table lives in, which fixes the shape of
/// its index tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingTag {
    /// Domain ring: one variable per tuple of `k` pairwise distinct column
    /// indices.
    Y { k: usize },
    /// Intermediate ring: one variable per (slot, column) pair with slot in
    /// `1..=k`.
    Z { k: usize },
    /// Target ring: one variable per column index when `m == 1`, or per
    /// (group, column) pair with group in `1..=m`.
    X { m: usize },
}

impl RingTag {
    /// Number of indices in each tuple of this ring.
    pub fn arity(self) -> usize {
        match self {
            RingTag::Y { k } => k,
            RingTag::Z { .. } => 2,
            RingTag::X { m } => {
                if m == 1 {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// Whether position `pos` (0-based) of a tuple holds a column index —
    /// i.e. is moved by column relabelings.  The remaining positions are
    /// fixed row labels (the slot of a Z variable, the group of an X
    /// variable).
    pub fn is_column_position(self, pos: usize) -> bool {
        match self {
            RingTag::Y { .. } => true,
            RingTag::Z { .. } => pos == 1,
            RingTag::X { m } => pos == if m == 1 { 0 } else { 1 },
        }
    }

    /// Validates one tuple against this tag.
    pub fn check_tuple(self, t: &IndexTuple) -> Result<()> {
        let ix = t.indices();
        ensure!(
            ix.iter().all(|&i| i >= 1),
            "index tuple ({t}) has a non-positive index; indices are 1-based"
        );
        match self {
            RingTag::Y { k } => {
                ensure!(k >= 1, "Y ring arity must be at least 1");
                ensure!(ix.len() == k, "Y tuple ({t}) has arity {}, expected {k}", ix.len());
                let distinct: BTreeSet<u32> = ix.iter().copied().collect();
                ensure!(distinct.len() == k, "Y tuple ({t}) repeats a column index");
            }
            RingTag::Z { k } => {
                ensure!(ix.len() == 2, "Z tuple ({t}) must be a (slot, column) pair");
                ensure!(
                    (ix[0] as usize) <= k,
                    "Z tuple ({t}) has slot {} outside 1..={k}",
                    ix[0]
                );
            }
            RingTag::X { m } => {
                if m == 1 {
                    ensure!(ix.len() == 1, "X tuple ({t}) must be a single column index");
                } else {
                    ensure!(ix.len() == 2, "X tuple ({t}) must be a (group, column) pair");
                    ensure!(
                        (ix[0] as usize) <= m,
                        "X tuple ({t}) has group {} outside 1..={m}",
                        ix[0]
                    );
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Y { k } => write!(f, "Y[k={k}]"),
            RingTag::Z { k } => write!(f, "Z[k={k}]"),
            RingTag::X { m } => write!(f, "X[m={m}]"),
        }
    }
}

/// An index tuple: a short sequence of 1-based indices naming one variable.
///
/// Ordering is lexicographic over the numeric indices (so `(2, 1)` sorts
/// before `(10, 1)`), which is the order used everywhere: map iteration,
/// serialization, and structural comparison of tables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(indices: impl Into<Vec<u32>>) -> Self {
        IndexTuple(indices.into())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl From<Vec<u32>> for IndexTuple {
    fn from(v: Vec<u32>) -> Self {
        IndexTuple(v)
    }
}

impl From<&[u32]> for IndexTuple {
    fn from(v: &[u32]) -> Self {
        IndexTuple(v.to_vec())
    }
}

/// Builds an [`IndexTuple`] from literal indices: `tuple![1, 2]`.
#[macro_export]
macro_rules! tuple {
    ($($i:expr),+ $(,)?) => {
        $crate::tables::IndexTuple::new(vec![$($i as u32),+])
    };
}

/// A finitely supported integer combination of ring variables.
///
/// The structural order (derived `Ord`) compares the sorted entry lists
/// lexicographically by `(tuple, coefficient)`; it is the order used to pick
/// canonical orbit representatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentTable {
    tag: RingTag,
    entries: BTreeMap<IndexTuple, Int>,
}

impl ExponentTable {
    /// The zero table of a ring.
    pub fn zero(tag: RingTag) -> Self {
        ExponentTable { tag, entries: BTreeMap::new() }
    }

    /// The unit table `e_t`.
    pub fn unit(tag: RingTag, t: IndexTuple) -> Result<Self> {
        Self::from_entries(tag, [(t, 1)])
    }

    /// Builds a table by accumulating `(tuple, coefficient)` contributions.
    /// Repeated tuples add up; exact cancellations vanish.
    pub fn from_entries(
        tag: RingTag,
        entries: impl IntoIterator<Item = (IndexTuple, Int)>,
    ) -> Result<Self> {
        let mut t = Self::zero(tag);
        for (tuple, c) in entries {
            t.accumulate(tuple, c)?;
        }
        Ok(t)
    }

    /// Adds `c` to the coefficient of `tuple`, validating the tuple shape.
    pub fn accumulate(&mut self, tuple: IndexTuple, c: Int) -> Result<()> {
        use std::collections::btree_map::Entry;
        self.tag.check_tuple(&tuple)?;
        if c == 0 {
            return Ok(());
        }
        match self.entries.entry(tuple) {
            Entry::Occupied(mut o) => {
                let v = checked_add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
        Ok(())
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    /// Coefficient of `t` (zero when absent).
    pub fn coeff(&self, t: &IndexTuple) -> Int {
        self.entries.get(t).copied().unwrap_or(0)
    }

    /// Entries with nonzero coefficient, in tuple-lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&IndexTuple, Int)> {
        self.entries.iter().map(|(t, &c)| (t, c))
    }

    /// Number of tuples with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&c| c > 0)
    }

    /// Sum of two tables of the same ring.
    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure!(
            self.tag == other.tag,
            "cannot add tables from different rings ({} vs {})",
            self.tag,
            other.tag
        );
        let mut out = self.clone();
        for (t, c) in other.entries() {
            out.accumulate(t.clone(), c)?;
        }
        Ok(out)
    }

    /// Difference `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExponentTable {
            tag: self.tag,
            entries: self
                .entries
                .iter()
                .map(|(t, &c)| (t.clone(), c.checked_neg().expect("integer overflow (neg)")))
                .collect(),
        }
    }

    /// Scalar multiple; `scale(0)` is the zero table.
    pub fn scale(&self, c: Int) -> Self {
        if c == 0 {
            return Self::zero(self.tag);
        }
        ExponentTable {
            tag: self.tag,
            entries: self
                .entries
                .iter()
                .map(|(t, &v)| (t.clone(), crate::mul(v, c)))
                .collect(),
        }
    }

    /// Splits into `(positive part, negative part)`: two nonnegative tables
    /// with disjoint supports satisfying `self = plus - minus`.
    pub fn split_signs(&self) -> (Self, Self) {
        let mut plus = Self::zero(self.tag);
        let mut minus = Self::zero(self.tag);
        for (t, c) in self.entries() {
            if c > 0 {
                plus.entries.insert(t.clone(), c);
            } else {
                minus.entries.insert(t.clone(), -c);
            }
        }
        (plus, minus)
    }

    /// Entrywise `self >= other` (both interpreted as vectors).
    pub fn dominates(&self, other: &Self) -> bool {
        if self.tag != other.tag {
            return false;
        }
        other.entries().all(|(t, c)| self.coeff(t) >= c)
    }

    /// Largest column index appearing in the support, or 0 for the zero
    /// table.  Row labels (slots, groups) do not count.
    pub fn width(&self) -> u32 {
        self.support_columns().into_iter().next_back().unwrap_or(0)
    }

    /// The set of distinct column indices in the support.
    pub fn support_columns(&self) -> BTreeSet<u32> {
        let mut cols = BTreeSet::new();
        for (t, _) in self.entries() {
            for (pos, &i) in t.indices().iter().enumerate() {
                if self.tag.is_column_position(pos) {
                    cols.insert(i);
                }
            }
        }
        cols
    }

    /// Sum of coefficients of a nonnegative table (the degree of the
    /// monomial it encodes).  Errors on tables with a negative entry.
    pub fn total_degree(&self) -> Result<Int> {
        ensure!(
            self.is_nonnegative() || self.is_zero(),
            "total degree is only defined for nonnegative tables"
        );
        let mut d: Int = 0;
        for (_, c) in self.entries() {
            d = checked_add(d, c);
        }
        Ok(d)
    }

    /// Serializes as one line per entry, `i1 i2 ... ir : c`, in
    /// tuple-lexicographic order.  The zero table serializes to the empty
    /// string.  [`ExponentTable::parse`] inverts this exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, c) in self.entries() {
            out.push_str(&format!("{t} : {c}\n"));
        }
        out
    }

    /// Parses the [`ExponentTable::to_text`] format.  Blank lines are
    /// ignored; duplicate tuples and zero coefficients are rejected so that
    /// serialization round-trips exactly.
    pub fn parse(tag: RingTag, text: &str) -> Result<Self> {
        let mut out = Self::zero(tag);
        for (line_idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (tuple, c) = parse_entry_line(tag, line, line_idx + 1)?;
            if c == 0 {
                return Err(crate::Error::Parse {
                    line: line_idx + 1,
                    msg: "zero coefficient is never serialized".into(),
                });
            }
            if out.entries.contains_key(&tuple) {
                return Err(crate::Error::Parse {
                    line: line_idx + 1,
                    msg: format!("duplicate tuple ({tuple})"),
                });
            }
            out.entries.insert(tuple, c);
        }
        Ok(out)
    }
}

impl fmt::Display for ExponentTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses one `i1 i2 ... ir : c` line; `line_no` is used in error messages.
pub(crate) fn parse_entry_line(
    tag: RingTag,
    line: &str,
    line_no: usize,
) -> Result<(IndexTuple, Int)> {
    let parse_err = |msg: String| crate::Error::Parse { line: line_no, msg };
    let (left, right) = line
        .split_once(':')
        .ok_or_else(|| parse_err("expected `i1 i2 ... ir : c`".into()))?;
    let mut indices = Vec::new();
    for tok in left.split_whitespace() {
        let i: u32 = tok
            .parse()
            .map_err(|_| parse_err(format!("invalid index `{tok}`")))?;
        indices.push(i);
    }
    let c: Int = right
        .trim()
        .parse()
        .map_err(|_| parse_err(format!("invalid coefficient `{}`", right.trim())))?;
    let tuple = IndexTuple::new(indices);
    tag.check_tuple(&tuple)
        .map_err(|e| parse_err(e.to_string()))?;
    Ok((tuple, c))
}

/// A difference of two monomials in the same ring: `plus - minus`, both
/// nonnegative.
///
/// The sides may share support: a move like `z^A - z^B` with a common
/// factor is a different object from its reduction, because applicability
/// in a monoid fiber graph is decided by the full side `B`, not by `B`
/// minus the shared part.  [`Binomial::reduced`] strips the common factor
/// when the reduced form is wanted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Binomial {
    plus: ExponentTable,
    minus: ExponentTable,
}

impl Binomial {
    pub fn new(plus: ExponentTable, minus: ExponentTable) -> Result<Self> {
        ensure!(
            plus.tag() == minus.tag(),
            "binomial sides live in different rings ({} vs {})",
            plus.tag(),
            minus.tag()
        );
        ensure!(
            plus.is_nonnegative() || plus.is_zero(),
            "binomial plus side has a negative entry"
        );
        ensure!(
            minus.is_nonnegative() || minus.is_zero(),
            "binomial minus side has a negative entry"
        );
        Ok(Binomial { plus, minus })
    }

    /// Splits a vector into its binomial form.
    pub fn from_vector(v: &ExponentTable) -> Self {
        let (plus, minus) = v.split_signs();
        Binomial { plus, minus }
    }

    pub fn plus(&self) -> &ExponentTable {
        &self.plus
    }

    pub fn minus(&self) -> &ExponentTable {
        &self.minus
    }

    pub fn tag(&self) -> RingTag {
        self.plus.tag()
    }

    /// The vector `plus - minus`.
    pub fn vector(&self) -> ExponentTable {
        self.plus.sub(&self.minus).expect("sides share a ring")
    }

    /// The reversed move `minus - plus`.
    pub fn swapped(&self) -> Self {
        Binomial { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// The same vector with the common factor of the two sides stripped,
    /// i.e. `from_vector(self.vector())`.
    pub fn reduced(&self) -> Self {
        Binomial::from_vector(&self.vector())
    }

    /// Whether the two sides share a tuple.
    pub fn sides_overlap(&self) -> bool {
        self.plus.entries().any(|(t, _)| self.minus.coeff(t) != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    /// Largest column index on either side.
    pub fn width(&self) -> u32 {
        self.plus.width().max(self.minus.width())
    }

    /// Distinct column indices on both sides.
    pub fn support_columns(&self) -> BTreeSet<u32> {
        let mut cols = self.plus.support_columns();
        cols.extend(self.minus.support_columns());
        cols
    }

    /// `(degree of plus, degree of minus)`.
    pub fn degree_pair(&self) -> (Int, Int) {
        (
            self.plus.total_degree().expect("plus side is nonnegative"),
            self.minus.total_degree().expect("minus side is nonnegative"),
        )
    }

    /// Serializes as the plus lines prefixed `+`, then the minus lines
    /// prefixed `-`, each `sign i1 ... ir : c`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, c) in self.plus.entries() {
            out.push_str(&format!("+ {t} : {c}\n"));
        }
        for (t, c) in self.minus.entries() {
            out.push_str(&format!("- {t} : {c}\n"));
        }
        out
    }

    /// Parses the [`Binomial::to_text`] format.
    pub fn parse(tag: RingTag, text: &str) -> Result<Self> {
        let mut plus = ExponentTable::zero(tag);
        let mut minus = ExponentTable::zero(tag);
        for (line_idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let line_no = line_idx + 1;
            let (sign, rest) = line.split_at(1);
            let side = match sign {
                "+" => &mut plus,
                "-" => &mut minus,
                _ => {
                    return Err(crate::Error::Parse {
                        line: line_no,
                        msg: format!("expected `+` or `-` sign prefix, got `{sign}`"),
                    })
                }
            };
            let (tuple, c) = parse_entry_line(tag, rest.trim(), line_no)?;
            if c <= 0 {
                return Err(crate::Error::Parse {
                    line: line_no,
                    msg: "binomial side coefficients must be positive".into(),
                });
            }
            if side.entries.contains_key(&tuple) {
                return Err(crate::Error::Parse {
                    line: line_no,
                    msg: format!("duplicate tuple ({tuple})"),
                });
            }
            side.entries.insert(tuple, c);
        }
        Binomial::new(plus, minus)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A multidegree in the target ring: a nonnegative X-table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiDegree(ExponentTable);

impl MultiDegree {
    pub fn new(t: ExponentTable) -> Result<Self> {
        match t.tag() {
            RingTag::X { .. } => {}
            other => usage!("a multidegree must be an X-table, got {other}"),
        }
        ensure!(
            t.is_nonnegative() || t.is_zero(),
            "a multidegree must be nonnegative"
        );
        Ok(MultiDegree(t))
    }

    pub fn zero(m: usize) -> Self {
        MultiDegree(ExponentTable::zero(RingTag::X { m }))
    }

    pub fn table(&self) -> &ExponentTable {
        &self.0
    }

    pub fn into_table(self) -> ExponentTable {
        self.0
    }

    /// Total degree (sum of entries).
    pub fn total(&self) -> Int {
        self.0.total_degree().expect("multidegrees are nonnegative")
    }

    pub fn width(&self) -> u32 {
        self.0.width()
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.dominates(&other.0)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
