//! Self-describing text serialization for generating sets.
//!
//! The format is line-oriented:
//!
//! ```text
//! genset v1
//! kind markov
//! target pi
//! k 2
//! exponents 2 1
//! moves 5
//! move
//! + 1 2 : 1
//! + 2 1 : 1
//! - 1 2 : 2
//! move
//! ...
//! ```
//!
//! The `target` line is followed by the data that pins the kernel down:
//! `k` for the splitting map, `exponents a b` for the width-2 exponent
//! map, and `k` plus one `exponents` line per row (and an optional
//! `truncation n`) for a full map.  Each `move` block lists the signed
//! entries of one binomial in the core table format, `sign i1 ... ir : c`.
//!
//! Parsing is lenient about blank lines and strict about everything else;
//! every malformation reports its 1-based line number.  Reading the output
//! of [`generators_to_text`] reproduces the set exactly, because sets
//! store canonical moves and construction re-canonicalizes.

use itertools::Itertools;

use crate::generators::{GeneratorKind, GeneratorSet, KernelTarget};
use crate::maps::MapSpec;
use crate::tables::{parse_entry_line, Binomial, ExponentTable};
use crate::{Error, Result};

/// Serializes a generating set; [`generators_from_text`] inverts this.
pub fn generators_to_text(g: &GeneratorSet) -> String {
    let mut out = String::from("genset v1\n");
    out.push_str(&format!("kind {}\n", g.kind().as_str()));
    match g.target() {
        KernelTarget::Phi { k } => {
            out.push_str("target phi\n");
            out.push_str(&format!("k {k}\n"));
        }
        KernelTarget::Psi { a, b } => {
            out.push_str("target psi\n");
            out.push_str(&format!("exponents {a} {b}\n"));
        }
        KernelTarget::Pi { spec } => {
            out.push_str("target pi\n");
            out.push_str(&format!("k {}\n", spec.k()));
            for row in spec.exponents() {
                out.push_str(&format!("exponents {}\n", row.iter().join(" ")));
            }
            if let Some(n) = spec.truncation() {
                out.push_str(&format!("truncation {n}\n"));
            }
        }
    }
    out.push_str(&format!("moves {}\n", g.len()));
    for m in g.moves() {
        out.push_str("move\n");
        out.push_str(&m.to_text());
    }
    out
}

/// Non-blank lines with their 1-based numbers, plus the number just past
/// the end for reporting truncated input.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let end = text.lines().count() + 1;
        Lines { items, pos: 0, end }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.items.get(self.pos) {
            Some(&item) => {
                self.pos += 1;
                Ok(item)
            }
            None => Err(Error::Parse {
                line: self.end,
                msg: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    /// Consumes a `key value...` line and returns the value part.
    fn key_value(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (no, line) = self.next(&format!("`{key} ...`"))?;
        match line.strip_prefix(key) {
            Some(rest) if rest.starts_with(char::is_whitespace) => Ok((no, rest.trim())),
            _ => Err(Error::Parse {
                line: no,
                msg: format!("expected `{key} ...`, got `{line}`"),
            }),
        }
    }
}

fn parse_num<T: std::str::FromStr>(no: usize, what: &str, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line: no,
        msg: format!("invalid {what} `{tok}`"),
    })
}

/// Maps a semantic construction error onto the line that introduced it.
fn at_line<T>(no: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse {
        line: no,
        msg: e.to_string(),
    })
}

/// Parses the [`generators_to_text`] format.
pub fn generators_from_text(text: &str) -> Result<GeneratorSet> {
    let mut lines = Lines::new(text);

    let (no, header) = lines.next("`genset v1`")?;
    if header != "genset v1" {
        return Err(Error::Parse {
            line: no,
            msg: format!("expected `genset v1`, got `{header}`"),
        });
    }

    let (no, kind) = lines.key_value("kind")?;
    let kind = at_line(no, GeneratorKind::parse(kind))?;

    let (target_no, target) = lines.key_value("target")?;
    let target = match target {
        "phi" => {
            let (no, k) = lines.key_value("k")?;
            KernelTarget::Phi {
                k: parse_num(no, "tuple width", k)?,
            }
        }
        "psi" => {
            let (no, val) = lines.key_value("exponents")?;
            let toks: Vec<&str> = val.split_whitespace().collect();
            let [a, b] = toks[..] else {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("expected `exponents a b`, got `exponents {val}`"),
                });
            };
            let a = parse_num(no, "exponent", a)?;
            let b = parse_num(no, "exponent", b)?;
            at_line(no, MapSpec::width2(a, b))?;
            KernelTarget::Psi { a, b }
        }
        "pi" => {
            let (k_no, k) = lines.key_value("k")?;
            let k: usize = parse_num(k_no, "tuple width", k)?;
            let mut exponents = Vec::new();
            let mut rows_no = k_no;
            while let Some((_, l)) = lines.peek() {
                if !l.starts_with("exponents") {
                    break;
                }
                let (no, val) = lines.key_value("exponents")?;
                let row = val
                    .split_whitespace()
                    .map(|t| parse_num(no, "exponent", t))
                    .collect::<Result<Vec<u64>>>()?;
                exponents.push(row);
                rows_no = no;
            }
            let mut truncation = None;
            if let Some((_, l)) = lines.peek() {
                if l.starts_with("truncation") {
                    let (no, val) = lines.key_value("truncation")?;
                    truncation = Some(parse_num(no, "truncation", val)?);
                }
            }
            let spec = at_line(rows_no, MapSpec::new(k, exponents, truncation))?;
            KernelTarget::Pi { spec }
        }
        other => {
            return Err(Error::Parse {
                line: target_no,
                msg: format!("unknown target `{other}`, expected pi, phi, or psi"),
            })
        }
    };
    let tag = target.ring();

    let (no, count) = lines.key_value("moves")?;
    let count: usize = parse_num(no, "move count", count)?;

    let mut moves = Vec::with_capacity(count);
    for i in 0..count {
        let (no, l) = lines.next("`move`")?;
        if l != "move" {
            return Err(Error::Parse {
                line: no,
                msg: format!("expected move block {} of {count}, got `{l}`", i + 1),
            });
        }
        let mut plus = ExponentTable::zero(tag);
        let mut minus = ExponentTable::zero(tag);
        while let Some((no, l)) = lines.peek() {
            let Some(rest) = l.strip_prefix(['+', '-']) else {
                break;
            };
            lines.next("a signed entry")?;
            let (tuple, c) = parse_entry_line(tag, rest.trim(), no)?;
            if c <= 0 {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("signed entries need a positive coefficient, got {c}"),
                });
            }
            let side = if l.starts_with('+') { &mut plus } else { &mut minus };
            at_line(no, side.accumulate(tuple, c))?;
        }
        moves.push(at_line(no, Binomial::new(plus, minus))?);
    }

    if let Some((no, l)) = lines.peek() {
        return Err(Error::Parse {
            line: no,
            msg: format!("expected end of input after {count} moves, got `{l}`"),
        });
    }

    GeneratorSet::new(kind, target, moves)
}
