//! Fiber-connectivity verification: does a move set connect every fiber?
//!
//! A move applies at a fiber element when its negative side divides the
//! element; the move then replaces that side by its positive side, landing
//! in the same fiber.  The set is a connecting set (a Markov basis at this
//! truncation) when every fiber is connected under the expanded moves.
//!
//! Fibers are indexed by the image multidegrees of monomials with total
//! degree at most the cap and support inside `[n]`; the fiber itself is
//! built with the ambient bound `N = n + slack` so moves may pass through
//! fresh columns.  Multidegrees are deduplicated by symmetry class first:
//! the expanded move set is closed under the symmetric group, so permuted
//! multidegrees have isomorphic fiber graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{ensure, usage};
use crate::generators::GeneratorSet;
use crate::tables::{Binomial, ExponentTable, MultiDegree};
use crate::verify::fiber::{dedup_degrees_by_symmetry, fiber_enumerate, y_image_degrees};
use crate::verify::report::Report;
use crate::{Int, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Indices of two elements in different components, if the fiber graph is
/// disconnected under the moves.
fn disconnected_pair(fiber: &[ExponentTable], moves: &[Binomial]) -> Option<(usize, usize)> {
    if fiber.len() <= 1 {
        return None;
    }
    let index: BTreeMap<&ExponentTable, usize> =
        fiber.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind::new(fiber.len());
    // Every edge is caught at the endpoint its negative side divides, so
    // one orientation per move suffices when all vertices are visited.
    for (vi, v) in fiber.iter().enumerate() {
        for m in moves {
            if v.dominates(m.minus()) {
                let u = v
                    .add(&m.vector())
                    .expect("fiber arithmetic stays in range");
                let ui = *index
                    .get(&u)
                    .expect("a move image stays in the fiber");
                uf.union(vi, ui);
            }
        }
    }
    let root0 = uf.find(0);
    let other = (1..fiber.len()).find(|&i| uf.find(i) != root0)?;
    Some((0, other))
}

/// Restricts the expanded moves to those that can act on a fiber: the full
/// support must stay inside the fiber's column support and the side degree
/// must fit the fiber degree.
fn applicable_moves<'m>(
    moves: &'m [Binomial],
    degree: &MultiDegree,
    fiber_y_degree: Int,
) -> Vec<&'m Binomial> {
    let support = degree.table().support_columns();
    moves
        .iter()
        .filter(|m| {
            let (p, q) = m.degree_pair();
            p.max(q) <= fiber_y_degree && m.support_columns().is_subset(&support)
        })
        .collect()
}

/// Checks connectivity of every fiber of the full map reachable from a
/// monomial of total degree at most `degree_cap` with support in `[n]`.
pub fn markov_check(g: &GeneratorSet, n: u32, slack: u32, degree_cap: Int) -> Result<Report> {
    let Some(spec) = g.target().pi_spec().cloned() else {
        crate::error::usage!(
            "fiber connectivity is defined for full-map targets; got {}",
            g.target()
        );
    };
    let ambient = n + slack;
    ensure!(
        g.width() <= ambient,
        "set width {} exceeds the ambient bound {ambient}",
        g.width()
    );
    let expanded = g.orbit_expand(ambient)?;
    let degrees = dedup_degrees_by_symmetry(y_image_degrees(&spec, n, degree_cap)?);
    let unit_total: Int = spec
        .exponents()
        .iter()
        .flatten()
        .map(|&a| a as Int)
        .sum();

    let mut report = Report::new("markov");
    report
        .param("target", g.target())
        .param("moves", g.len())
        .param("expanded_moves", expanded.len())
        .param("n", n)
        .param("slack", slack)
        .param("ambient", ambient)
        .param("degree_cap", degree_cap)
        .param("fibers", degrees.len());

    let results: Vec<Option<(MultiDegree, ExponentTable, ExponentTable)>> = degrees
        .par_iter()
        .map(|deg| {
            let fiber = fiber_enumerate(&spec, deg, ambient)?;
            let moves = applicable_moves(&expanded, deg, deg.total() / unit_total);
            let moves: Vec<Binomial> = moves.into_iter().cloned().collect();
            Ok(disconnected_pair(&fiber, &moves)
                .map(|(i, j)| (deg.clone(), fiber[i].clone(), fiber[j].clone())))
        })
        .collect::<Result<_>>()?;

    let mut pass = true;
    for failure in results.into_iter().flatten() {
        let (deg, a, b) = failure;
        pass = false;
        report.witness(format!(
            "disconnected fiber of degree {}: component of [{}] is separated from [{}]",
            deg.table().to_text().trim_end(),
            a.to_text().trim_end(),
            b.to_text().trim_end()
        ));
        break; // one concrete witness is enough
    }
    report.finish(pass);
    Ok(report)
}

/// A sequence of oriented move applications leading from `from` to `to`
/// inside the fiber, found by breadth-first search; each returned binomial
/// `s` satisfies `current + s.vector() = next`.  `None` when the two lie in
/// different components.
pub fn connecting_path(
    fiber: &[ExponentTable],
    moves: &[Binomial],
    from: &ExponentTable,
    to: &ExponentTable,
) -> Option<Vec<Binomial>> {
    let index: BTreeMap<&ExponentTable, usize> =
        fiber.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let (&start, &goal) = (index.get(from)?, index.get(to)?);
    let mut prev: Vec<Option<(usize, Binomial)>> = vec![None; fiber.len()];
    let mut seen = vec![false; fiber.len()];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(vi) = queue.pop_front() {
        if vi == goal {
            let mut path = Vec::new();
            let mut cur = goal;
            while let Some((p, step)) = prev[cur].clone() {
                path.push(step);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        let v = &fiber[vi];
        for m in moves {
            for step in [m.clone(), m.swapped()] {
                if v.dominates(step.minus()) {
                    let u = v.add(&step.vector()).expect("fiber arithmetic");
                    if let Some(&ui) = index.get(&u) {
                        if !seen[ui] {
                            seen[ui] = true;
                            prev[ui] = Some((vi, step.clone()));
                            queue.push_back(ui);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{markov_width2, GeneratorKind};
    use crate::maps::MapSpec;
    use crate::tables::{IndexTuple, RingTag};

    fn degree1(entries: &[(u32, Int)]) -> MultiDegree {
        let t = ExponentTable::from_entries(
            RingTag::X { m: 1 },
            entries.iter().map(|&(j, c)| (IndexTuple::new(vec![j]), c)),
        )
        .unwrap();
        MultiDegree::new(t).unwrap()
    }

    #[test]
    fn full_markov_family_connects_small_truncation() {
        let g = markov_width2(2, 1).unwrap();
        let report = markov_check(&g, 4, 2, 3).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn splitting_moves_alone_leave_fibers_disconnected() {
        // The quadric and the cubic stay inside the splitting kernel; the
        // fiber of (ab, ab, a) needs an exponent-direction move.
        let g = markov_width2(2, 1).unwrap();
        let partial = GeneratorSet::new(
            GeneratorKind::Markov,
            g.target().clone(),
            vec![g.moves()[0].clone(), g.moves()[1].clone()],
        )
        .unwrap();
        let report = markov_check(&partial, 4, 2, 3).unwrap();
        assert!(!report.passed());
        assert!(report.witnesses()[0].contains("disconnected fiber"));
    }

    #[test]
    fn connecting_paths_replay_exactly() {
        let spec = MapSpec::width2(2, 1).unwrap();
        let g = markov_width2(2, 1).unwrap();
        let deg = degree1(&[(1, 2), (2, 2), (3, 2)]);
        let fiber = fiber_enumerate(&spec, &deg, 5).unwrap();
        assert!(fiber.len() >= 2);
        let moves = g.orbit_expand(5).unwrap();
        for target in &fiber[1..] {
            let path = connecting_path(&fiber, &moves, &fiber[0], target)
                .expect("fiber is connected");
            let mut cur = fiber[0].clone();
            for step in &path {
                assert!(cur.dominates(step.minus()));
                cur = cur.add(&step.vector()).unwrap();
                assert!(fiber.contains(&cur));
            }
            assert_eq!(&cur, target);
        }
    }

    #[test]
    fn non_pi_targets_are_rejected() {
        let g = crate::generators::phi_markov_basis().unwrap();
        assert!(markov_check(&g, 4, 1, 3).is_err());
    }

    #[test]
    fn singleton_fibers_are_trivially_connected() {
        assert_eq!(disconnected_pair(&[], &[]), None);
        let one = vec![ExponentTable::zero(RingTag::Y { k: 2 })];
        assert_eq!(disconnected_pair(&one, &[]), None);
    }

    #[test]
    fn markov_verdict_is_symmetry_invariant() {
        // Permuting every move leaves the canonicalized set, and hence the
        // verdict, unchanged.
        let g = markov_width2(2, 1).unwrap();
        let sigma = crate::symmetry::Permutation::from_images(vec![3, 1, 4, 2]).unwrap();
        let permuted: Vec<Binomial> = g
            .moves()
            .iter()
            .map(|m| crate::symmetry::act_binomial(&sigma, m).unwrap())
            .collect();
        let h = GeneratorSet::new(GeneratorKind::Markov, g.target().clone(), permuted).unwrap();
        assert_eq!(g, h);
    }
}
