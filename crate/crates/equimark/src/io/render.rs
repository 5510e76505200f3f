//! Box-shape rendering of monomials.
//!
//! A monomial is drawn as columns of stacked boxes:
//!
//! * an X-monomial puts one plain box of height `e` in column `j` for each
//!   factor `x_j^e`;
//! * a Z-monomial subdivides: each unit of `z_{s,j}` contributes one box
//!   of height `a_s` (the slot's exponent) to column `j`;
//! * a Y-monomial over a width-2 map decorates: each unit of `y_{ij}`
//!   contributes a height-`a` box to column `i` and a height-`b` box to
//!   column `j` linked by a shared pairing id — letters in ASCII, fill
//!   patterns in TikZ.
//!
//! Columns are ordered by decreasing total height, then by their box
//! heights in decreasing order, with the original index only breaking ties
//! between identically shaped columns.  The output therefore depends only
//! on the multiset of column contents, which for Z-tables means it is
//! invariant under column relabeling.  Within a column, taller boxes sit
//! at the bottom.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{ensure, usage};
use crate::maps::{MapSpec, MatchingTable};
use crate::tables::{ExponentTable, MultiDegree};
use crate::tables::RingTag;
use crate::{Int, Result};

/// One box in a column: its height and, when the shape is decorated, the
/// pairing id linking it to its partner box in another column.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoxUnit {
    pub height: Int,
    pub pair: Option<usize>,
}

/// A normalized stack diagram, ready to draw.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxShape {
    /// Columns in display order; each column lists its boxes bottom-up.
    columns: Vec<Vec<BoxUnit>>,
}

/// Keeps diagrams printable: a shape taller or wider than this is a usage
/// error, not a rendering job.
const MAX_EXTENT: Int = 4096;

const ASCII_LABELS: &[u8; 52] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

const TIKZ_PATTERNS: [&str; 6] = [
    "pattern color=red, pattern=horizontal lines",
    "pattern color=blue, pattern=north east lines",
    "pattern=dots",
    "pattern color=green!60!black, pattern=vertical lines",
    "pattern color=orange, pattern=north west lines",
    "pattern color=violet, pattern=crosshatch",
];

impl BoxShape {
    /// Plain columns of an X-monomial: one box of height `e` per factor
    /// `x_j^e`.
    pub fn from_multidegree(d: &MultiDegree) -> Result<Self> {
        match d.table().tag() {
            RingTag::X { m: 1 } => {}
            other => usage!("box shapes draw single-row target degrees, got {other}"),
        }
        let mut columns: BTreeMap<u32, Vec<BoxUnit>> = BTreeMap::new();
        for (t, e) in d.table().entries() {
            let j = t.indices()[0];
            columns.entry(j).or_default().push(BoxUnit {
                height: e,
                pair: None,
            });
        }
        Self::normalize(columns)
    }

    /// Subdivided columns of a Z-monomial: each unit of `z_{s,j}` is a box
    /// of height `a_s` in column `j`.
    pub fn from_matching(z: &MatchingTable, spec: &MapSpec) -> Result<Self> {
        ensure!(
            spec.m() == 1,
            "box shapes draw single-row maps, got m = {}",
            spec.m()
        );
        ensure!(
            z.k() == spec.k(),
            "the table has {} slots but the map has {}",
            z.k(),
            spec.k()
        );
        let heights = &spec.exponents()[0];
        let mut columns: BTreeMap<u32, Vec<BoxUnit>> = BTreeMap::new();
        for (t, e) in z.table().entries() {
            let [s, j] = t.indices() else {
                unreachable!("Z-tuples have two indices");
            };
            ensure!(
                e <= MAX_EXTENT,
                "the diagram needs {e} boxes in one column; box shapes are for small examples"
            );
            let unit = BoxUnit {
                height: heights[(s - 1) as usize] as Int,
                pair: None,
            };
            columns
                .entry(*j)
                .or_default()
                .extend(std::iter::repeat(unit).take(e as usize));
        }
        Self::normalize(columns)
    }

    /// Decorated columns of a Y-monomial over a width-2 map: each unit of
    /// `y_{ij}` pairs a height-`a` box in column `i` with a height-`b` box
    /// in column `j`.
    pub fn from_y_monomial(t: &ExponentTable, spec: &MapSpec) -> Result<Self> {
        ensure!(
            spec.k() == 2 && spec.m() == 1,
            "decorated box shapes pair two boxes per variable, so they need a single-row width-2 map, got {spec}"
        );
        ensure!(
            t.tag() == spec.tag_y(),
            "expected a {} table, got {}",
            spec.tag_y(),
            t.tag()
        );
        ensure!(
            t.is_nonnegative() || t.is_zero(),
            "only nonnegative monomials have a box shape"
        );
        let a = spec.exponents()[0][0] as Int;
        let b = spec.exponents()[0][1] as Int;
        let mut columns: BTreeMap<u32, Vec<BoxUnit>> = BTreeMap::new();
        let mut next_pair = 0;
        for (tuple, e) in t.entries() {
            let [i, j] = tuple.indices() else {
                unreachable!("width-2 Y-tuples have two indices");
            };
            ensure!(
                e <= MAX_EXTENT,
                "the diagram needs {e} pairs for one variable; box shapes are for small examples"
            );
            for _ in 0..e {
                let pair = Some(next_pair);
                next_pair += 1;
                columns.entry(*i).or_default().push(BoxUnit { height: a, pair });
                columns.entry(*j).or_default().push(BoxUnit { height: b, pair });
            }
        }
        Self::normalize(columns)
    }

    /// Sorts boxes within columns (tall first) and columns by decreasing
    /// total height, then decreasing box heights, then original index.
    fn normalize(columns: BTreeMap<u32, Vec<BoxUnit>>) -> Result<Self> {
        let mut cols: Vec<(u32, Vec<BoxUnit>)> = columns.into_iter().collect();
        ensure!(
            cols.len() as Int <= MAX_EXTENT,
            "the diagram needs {} columns; box shapes are for small examples",
            cols.len()
        );
        for (_, col) in &mut cols {
            col.sort_by_key(|u| (std::cmp::Reverse(u.height), u.pair));
            let total: Int = col.iter().map(|u| u.height).sum();
            ensure!(
                total <= MAX_EXTENT,
                "the diagram is {total} rows tall; box shapes are for small examples"
            );
        }
        cols.sort_by(|(i, u), (j, v)| {
            let tu: Int = u.iter().map(|b| b.height).sum();
            let tv: Int = v.iter().map(|b| b.height).sum();
            tv.cmp(&tu)
                .then_with(|| {
                    let hu = u.iter().map(|b| b.height);
                    let hv = v.iter().map(|b| b.height);
                    hv.cmp(hu)
                })
                .then(i.cmp(j))
        });
        Ok(BoxShape {
            columns: cols.into_iter().map(|(_, c)| c).collect(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Columns in display order, boxes bottom-up.
    pub fn columns(&self) -> &[Vec<BoxUnit>] {
        &self.columns
    }

    /// Character-cell drawing: each box is a `+-+`-framed cell stack, with
    /// pairing labels lettered inside.  The empty shape renders as the
    /// empty string.
    pub fn ascii(&self) -> String {
        if self.columns.is_empty() {
            return String::new();
        }
        struct Col {
            total: Int,
            bounds: BTreeSet<Int>,
            labels: Vec<char>,
        }
        let cols: Vec<Col> = self
            .columns
            .iter()
            .map(|boxes| {
                let mut bounds = BTreeSet::from([0]);
                let mut labels = Vec::new();
                let mut y = 0;
                for u in boxes {
                    let label = u
                        .pair
                        .map(|p| ASCII_LABELS[p % ASCII_LABELS.len()] as char)
                        .unwrap_or(' ');
                    labels.extend(std::iter::repeat(label).take(u.height as usize));
                    y += u.height;
                    bounds.insert(y);
                }
                Col { total: y, bounds, labels }
            })
            .collect();
        let h = cols.iter().map(|c| c.total).max().unwrap_or(0) as usize;
        let mut out = String::new();
        for tr in 0..=(2 * h) {
            let mut line = String::new();
            for (ci, col) in cols.iter().enumerate() {
                if ci > 0 {
                    line.push(' ');
                }
                let cell: [char; 3] = if tr % 2 == 0 {
                    // A horizontal edge at integer level y.
                    let y = (h - tr / 2) as Int;
                    if y > col.total {
                        [' ', ' ', ' ']
                    } else if col.bounds.contains(&y) {
                        ['+', '-', '+']
                    } else {
                        ['|', ' ', '|']
                    }
                } else {
                    // The interior of the unit cell spanning [y, y+1).
                    let y = (h - (tr + 1) / 2) as Int;
                    if y >= col.total {
                        [' ', ' ', ' ']
                    } else {
                        ['|', col.labels[y as usize], '|']
                    }
                };
                line.extend(cell);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// TikZ drawing on an integer grid, one `rectangle` per box; decorated
    /// boxes are `\filldraw`n with a fill pattern per pairing id.  The
    /// empty shape renders as the empty string.
    pub fn tikz(&self) -> String {
        if self.columns.is_empty() {
            return String::new();
        }
        let decorated = self.columns.iter().flatten().any(|u| u.pair.is_some());
        let mut out = String::new();
        if decorated {
            out.push_str("% requires \\usetikzlibrary{patterns}\n");
        }
        out.push_str("\\begin{tikzpicture}[scale=.4, box style/.style={draw}]\n");
        for (x, col) in self.columns.iter().enumerate() {
            let mut y: Int = 0;
            for u in col {
                let top = y + u.height;
                match u.pair {
                    None => writeln!(
                        out,
                        "  \\draw[style=box style] ({x},{y}) rectangle ({},{top});",
                        x + 1
                    ),
                    Some(id) => writeln!(
                        out,
                        "  \\filldraw[style=box style, {}] ({x},{y}) rectangle ({},{top});",
                        TIKZ_PATTERNS[id % TIKZ_PATTERNS.len()],
                        x + 1
                    ),
                }
                .expect("writing to a String cannot fail");
                y = top;
            }
        }
        out.push_str("\\end{tikzpicture}\n");
        out
    }
}
