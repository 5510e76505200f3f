//! The 4ti2 matrix text format.
//!
//! A file is a header line `r c` followed by `r` rows of `c`
//! whitespace-separated integers.  Two orientations are in use, matching
//! 4ti2's `.mat`/`.lat` conventions:
//!
//! * **matrix files** (`.mat`): rows are target dimensions, columns are
//!   domain variables — see [`export_truncation`];
//! * **move files** (`.lat`): rows are moves, columns are domain
//!   variables — see [`export_moves`] and [`moves_from_rows`].
//!
//! In both orientations the domain variables are ordered
//! lexicographically by index tuple; [`ring_variables`] fixes that order.
//! Parsing is lenient about blank lines and per-line spacing; writing is
//! canonical (single spaces, one trailing newline per line), so
//! write-parse-write is byte identity.

use itertools::Itertools;

use crate::error::{ensure, usage};
use crate::generators::GeneratorSet;
use crate::maps::TruncationMatrix;
use crate::tables::{Binomial, ExponentTable, IndexTuple, RingTag};
use crate::{Int, Result};

/// A dense integer matrix with an explicit column count, so the empty
/// matrix still records how many columns its rows would have.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FtiMatrix {
    cols: usize,
    rows: Vec<Vec<Int>>,
}

impl FtiMatrix {
    /// Wraps rows after checking they all have `cols` entries.
    pub fn new(cols: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            ensure!(
                row.len() == cols,
                "row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            );
        }
        Ok(FtiMatrix { cols, rows })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.rows
    }

    /// Serializes as `r c` then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows.len(), self.cols);
        for row in &self.rows {
            let line = row.iter().map(Int::to_string).join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parses the [`FtiMatrix::to_text`] format.  Blank lines anywhere are
    /// tolerated; every malformation reports the 1-based line it was found
    /// on.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |line: usize, msg: String| crate::Error::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty input, expected an `r c` header".into()))?;
        let counts: Vec<&str> = header.split_whitespace().collect();
        let [r, c] = counts[..] else {
            return Err(parse_err(
                header_no,
                format!("expected an `r c` header, got `{header}`"),
            ));
        };
        let r: usize = r
            .parse()
            .map_err(|_| parse_err(header_no, format!("invalid row count `{r}`")))?;
        let c: usize = c
            .parse()
            .map_err(|_| parse_err(header_no, format!("invalid column count `{c}`")))?;
        let mut rows = Vec::with_capacity(r);
        let mut last_no = header_no;
        for (line_no, line) in lines {
            if rows.len() == r {
                return Err(parse_err(
                    line_no,
                    format!("expected {r} rows, found extra data `{line}`"),
                ));
            }
            let mut row = Vec::with_capacity(c);
            for tok in line.split_whitespace() {
                let v: Int = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid integer `{tok}`")))?;
                row.push(v);
            }
            if row.len() != c {
                return Err(parse_err(
                    line_no,
                    format!("row has {} entries, expected {c}", row.len()),
                ));
            }
            rows.push(row);
            last_no = line_no;
        }
        if rows.len() < r {
            return Err(parse_err(
                last_no + 1,
                format!("expected {r} rows, found {}", rows.len()),
            ));
        }
        Ok(FtiMatrix { cols: c, rows })
    }
}

impl std::fmt::Display for FtiMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All variables of `tag` supported in columns `1..=n`, in lexicographic
/// tuple order.  This is the column order of every exported file.
pub fn ring_variables(tag: RingTag, n: u32) -> Vec<IndexTuple> {
    match tag {
        RingTag::Y { k } => (1..=n).permutations(k).map(IndexTuple::new).collect(),
        RingTag::Z { k } => (1..=k as u32)
            .cartesian_product(1..=n)
            .map(|(s, j)| IndexTuple::new(vec![s, j]))
            .collect(),
        RingTag::X { m } => {
            if m == 1 {
                (1..=n).map(|j| IndexTuple::new(vec![j])).collect()
            } else {
                (1..=m as u32)
                    .cartesian_product(1..=n)
                    .map(|(l, j)| IndexTuple::new(vec![l, j]))
                    .collect()
            }
        }
    }
}

/// Exports a truncated map matrix: rows are target dimensions, columns are
/// the domain tuples in lexicographic order.
pub fn export_truncation(m: &TruncationMatrix) -> FtiMatrix {
    FtiMatrix {
        cols: m.tuples().len(),
        rows: m.dense_rows(),
    }
}

/// Exports a move file: one row per move (its signed exponent vector),
/// columns the variables of the ambient ring in `1..=n`.
pub fn export_moves(g: &GeneratorSet, n: u32) -> Result<FtiMatrix> {
    ensure!(
        g.width() <= n,
        "moves of width {} do not fit in {n} columns",
        g.width()
    );
    let vars = ring_variables(g.ring(), n);
    let rows = g
        .moves()
        .iter()
        .map(|m| {
            let v = m.vector();
            vars.iter().map(|t| v.coeff(t)).collect()
        })
        .collect();
    Ok(FtiMatrix {
        cols: vars.len(),
        rows,
    })
}

/// Parses a 4ti2 file into its integer row vectors.
pub fn import_4ti2(text: &str) -> Result<Vec<Vec<Int>>> {
    Ok(FtiMatrix::parse(text)?.into_rows())
}

/// Reinterprets imported move-file rows as binomials over `tag` in
/// `1..=n`: entry `j` of a row is the signed exponent of the `j`-th ring
/// variable.
pub fn moves_from_rows(tag: RingTag, n: u32, rows: &[Vec<Int>]) -> Result<Vec<Binomial>> {
    let vars = ring_variables(tag, n);
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            ensure!(
                row.len() == vars.len(),
                "row {} has {} entries, but {} has {} variables in 1..={n}",
                i + 1,
                row.len(),
                tag,
                vars.len()
            );
            let v = ExponentTable::from_entries(
                tag,
                vars.iter().cloned().zip(row.iter().copied()),
            )?;
            let (plus, minus) = v.split_signs();
            Binomial::new(plus, minus)
        })
        .collect()
}
