//! Lattice-span verification at a finite truncation.
//!
//! The claim under test: the symmetric-group orbits of a move set generate
//! the kernel of the map's linearization as a lattice.  At truncation the
//! check inserts every orbit image over `[N]`, `N = n + slack`, into a
//! Hermite normal form and then asks whether each kernel basis vector of
//! the truncation matrix at `n` (embedded into the `[N]` coordinate space)
//! lies in the spanned lattice.  Both directions are exact.
//!
//! Orbit insertion checks the targets periodically and stops as soon as
//! all of them are spanned — sound because the lattice only grows — so
//! passing runs do not pay for the full orbit.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{ensure, usage};
use crate::generators::{GeneratorSet, KernelTarget};
use crate::hnf::HermiteForm;
use crate::maps::{kernel_basis, MapSpec, TruncationMatrix};
use crate::symmetry::orbit_visit_binomial;
use crate::tables::{ExponentTable, IndexTuple, RingTag};
use crate::verify::report::Report;
use crate::{Int, Result};

/// The coordinate space of monomial exponents at a truncation: one
/// coordinate per variable index tuple, in lexicographic order.
struct Coords {
    tag: RingTag,
    tuples: Vec<IndexTuple>,
    index: BTreeMap<IndexTuple, usize>,
}

impl Coords {
    fn new(tag: RingTag, n: u32) -> Self {
        let tuples: Vec<IndexTuple> = match tag {
            RingTag::Y { k } => (1..=n)
                .permutations(k)
                .map(IndexTuple::new)
                .collect(),
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
        };
        let index = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Coords { tag, tuples, index }
    }

    fn dim(&self) -> usize {
        self.tuples.len()
    }

    fn to_dense(&self, t: &ExponentTable) -> Result<Vec<Int>> {
        let mut v = vec![0; self.tuples.len()];
        for (tuple, c) in t.entries() {
            let Some(&i) = self.index.get(tuple) else {
                crate::error::usage!(
                    "table entry {tuple} is outside the coordinate space"
                );
            };
            v[i] = c;
        }
        Ok(v)
    }

    fn to_table(&self, v: &[Int]) -> Result<ExponentTable> {
        ExponentTable::from_entries(
            self.tag,
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.tuples[i].clone(), c)),
        )
    }
}

/// Rows of the target map's linearization at truncation `n`, with columns
/// in the order of `Coords::new(ring, n)`.
fn target_matrix(target: &KernelTarget, n: u32) -> Result<Vec<Vec<Int>>> {
    match target {
        KernelTarget::Pi { spec } => Ok(TruncationMatrix::build(spec, n)?.dense_rows()),
        KernelTarget::Phi { k } => {
            let coords = Coords::new(RingTag::Y { k: *k }, n);
            let rows_n = *k * n as usize;
            let mut rows = vec![vec![0; coords.dim()]; rows_n];
            for (i, t) in coords.tuples.iter().enumerate() {
                for (s, &j) in t.indices().iter().enumerate() {
                    rows[s * n as usize + (j as usize - 1)][i] += 1;
                }
            }
            Ok(rows)
        }
        KernelTarget::Psi { a, b } => {
            let spec = MapSpec::width2(*a, *b)?;
            let coords = Coords::new(RingTag::Z { k: 2 }, n);
            let mut rows = vec![vec![0; coords.dim()]; n as usize];
            for (i, t) in coords.tuples.iter().enumerate() {
                let s = t.indices()[0] as usize;
                let j = t.indices()[1] as usize;
                rows[j - 1][i] += spec.exponents()[0][s - 1] as Int;
            }
            Ok(rows)
        }
    }
}

/// Checks that the `S_N`-orbits of the move set span the kernel of the
/// target's truncation matrix at `n`, `N = n + slack`.
pub fn lattice_span_check(g: &GeneratorSet, n: u32, slack: u32) -> Result<Report> {
    ensure!(
        g.width() <= n,
        "set width {} exceeds the claimed truncation {n}",
        g.width()
    );
    let ambient = n + slack;
    let ring = g.ring();
    let coords = Coords::new(ring, ambient);
    let coords_n = Coords::new(ring, n);

    let rows = target_matrix(g.target(), n)?;
    let kernel = kernel_basis(&rows)?;
    // Embed each kernel vector of the n-truncation into the [N] space.
    let targets: Vec<Vec<Int>> = kernel
        .iter()
        .map(|v| {
            let table = coords_n.to_table(v)?;
            coords.to_dense(&table)
        })
        .collect::<Result<_>>()?;

    let mut report = Report::new("span");
    report
        .param("target", g.target())
        .param("kind", g.kind().as_str())
        .param("moves", g.len())
        .param("n", n)
        .param("slack", slack)
        .param("ambient", ambient)
        .param("dim", coords.dim())
        .param("kernel_rank", targets.len());

    let mut hnf = HermiteForm::new(coords.dim());
    let mut verified = vec![false; targets.len()];
    let all_verified = |hnf: &HermiteForm, verified: &mut Vec<bool>| -> bool {
        for (i, t) in targets.iter().enumerate() {
            if !verified[i] {
                if hnf.contains(t) {
                    verified[i] = true;
                } else {
                    return false;
                }
            }
        }
        true
    };

    let check_every = (4 * coords.dim()).max(1024);
    let mut inserted: u64 = 0;
    let mut done = false;
    for m in g.moves() {
        if done {
            break;
        }
        done = orbit_visit_binomial(m, ambient as usize, |img| {
            hnf.insert(coords.to_dense(&img.vector())?);
            inserted += 1;
            if inserted % check_every as u64 == 0
                && hnf.rank() >= targets.len()
                && all_verified(&hnf, &mut verified)
            {
                return Ok(true);
            }
            Ok(false)
        })?;
    }
    let pass = done || all_verified(&hnf, &mut verified);
    report.param("orbit_vectors", inserted);
    if !pass {
        for (i, ok) in verified.iter().enumerate() {
            if !ok {
                let table = coords_n.to_table(&kernel[i])?;
                report.witness(format!("kernel vector not spanned: {}", table.to_text()));
                break;
            }
        }
    }
    report.finish(pass);
    Ok(report)
}
