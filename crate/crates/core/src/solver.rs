//! Exact `F`-isolation numbers.
//!
//! [`solve`] runs iterative deepening on `|D|`. At each node it picks an
//! obstruction (an `F`-copy, or a cycle for [`Family::AllCycles`]) that
//! survives in `G - N[D]`; any isolating extension of `D` must contain a
//! vertex of `N[V(F')]`, so the search branches on exactly those vertices.
//! Siblings tried earlier are excluded from later subtrees. [`solve_oracle`]
//! is the unpruned subset enumeration used to cross-check it.

use std::ops::ControlFlow;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::pattern::{contains_copy, for_each_copy_in, Pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a pattern family needs at least one pattern")]
    EmptyFamily,
}

/// The family `𝓕` whose members must be isolated.
#[derive(Debug, Clone)]
pub enum Family {
    Patterns(Vec<Pattern>),
    /// Every cycle `C_n`, `n >= 3`.
    AllCycles,
}

impl Family {
    pub fn single(p: Pattern) -> Self {
        Family::Patterns(vec![p])
    }

    pub fn patterns(ps: Vec<Pattern>) -> Result<Self, FamilyError> {
        if ps.is_empty() {
            Err(FamilyError::EmptyFamily)
        } else {
            Ok(Family::Patterns(ps))
        }
    }

    /// Whether every member is connected.
    pub fn all_connected(&self) -> bool {
        match self {
            Family::Patterns(ps) => ps.iter().all(Pattern::is_connected),
            Family::AllCycles => true,
        }
    }

    /// Up to `cap` obstructions inside `g[alive]`.
    fn obstructions(&self, g: &Graph, alive: VertexSet, cap: usize) -> Vec<VertexSet> {
        match self {
            Family::AllCycles => shortest_cycle_in(g, alive).into_iter().collect(),
            Family::Patterns(ps) => {
                let mut out: Vec<VertexSet> = Vec::new();
                for p in ps {
                    for_each_copy_in(g, alive, p, |s| {
                        if !out.contains(&s) {
                            out.push(s);
                        }
                        if out.len() >= cap {
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    });
                    if out.len() >= cap {
                        break;
                    }
                }
                out
            }
        }
    }
}

/// Vertex set of a shortest cycle in `g[alive]`, ties broken by the smallest
/// BFS root.
fn shortest_cycle_in(g: &Graph, alive: VertexSet) -> Option<VertexSet> {
    let n = g.n();
    let mut best: Option<VertexSet> = None;
    for root in alive {
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b.len()) {
                break;
            }
            for w in g.neighbors(u) & alive {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let cycle = join_paths(&parent, u, w);
                    if let Some(cycle) = cycle {
                        if best.is_none_or(|b| cycle.len() < b.len()) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Cycle formed by edge `uw` and the BFS-tree paths up to the common
/// ancestor; `None` when the paths meet below the root without forming a
/// simple cycle through `uw`.
fn join_paths(parent: &[usize], u: usize, w: usize) -> Option<VertexSet> {
    let ancestors = |mut x: usize| {
        let mut chain = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            chain.push(x);
        }
        chain
    };
    let a = ancestors(u);
    let b = ancestors(w);
    let meet = a.iter().position(|x| b.contains(x))?;
    let meet_vertex = a[meet];
    let bpos = b.iter().position(|&x| x == meet_vertex).unwrap();
    let set: VertexSet = a[..=meet].iter().chain(&b[..bpos]).copied().collect();
    (set.len() >= 3).then_some(set)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub copies_found: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub iota: usize,
    pub witness: VertexSet,
    pub stats: SolveStats,
}

pub fn is_family_free(g: &Graph, fam: &Family) -> bool {
    match fam {
        Family::AllCycles => g.is_forest_within(g.vertices()),
        Family::Patterns(ps) => ps.iter().all(|p| contains_copy(g, p).is_none()),
    }
}

/// Whether `G - N[D]` is `𝓕`-free, checked on the materialized residual graph.
pub fn is_isolating(g: &Graph, fam: &Family, d: VertexSet) -> bool {
    is_family_free(&g.delete(g.closed_neighborhood(d)).graph, fam)
}

pub fn solve(g: &Graph, fam: &Family) -> SolveResult {
    solve_with_forced(g, fam, VertexSet::EMPTY)
}

/// Smallest `𝓕`-isolating set containing `forced`.
pub fn solve_with_forced(g: &Graph, fam: &Family, forced: VertexSet) -> SolveResult {
    let forced = forced & g.vertices();
    let mut search = Search {
        g,
        fam,
        stats: SolveStats::default(),
    };
    let covered = g.closed_neighborhood(forced);
    for budget in 0..=g.n() {
        if let Some(witness) = search.run(forced, covered, VertexSet::EMPTY, budget) {
            return SolveResult {
                iota: witness.len(),
                witness,
                stats: search.stats,
            };
        }
    }
    unreachable!("V(G) is always isolating")
}

/// Obstructions examined per node when choosing where to branch.
const OBSTRUCTION_CAP: usize = 24;

struct Search<'a> {
    g: &'a Graph,
    fam: &'a Family,
    stats: SolveStats,
}

impl Search<'_> {
    fn run(
        &mut self,
        chosen: VertexSet,
        covered: VertexSet,
        excluded: VertexSet,
        budget: usize,
    ) -> Option<VertexSet> {
        self.stats.nodes_expanded += 1;
        let g = self.g;
        let alive = g.vertices() - covered;
        let found = self.fam.obstructions(g, alive, OBSTRUCTION_CAP);
        self.stats.copies_found += found.len() as u64;
        if found.is_empty() {
            return Some(chosen);
        }
        if budget == 0 {
            return None;
        }

        let candidates: Vec<VertexSet> = found
            .iter()
            .map(|&s| g.closed_neighborhood(s) - excluded)
            .collect();

        // Obstructions with pairwise disjoint candidate sets each need their
        // own vertex of D.
        let mut packed = VertexSet::EMPTY;
        let mut lower = 0;
        let mut by_size: Vec<&VertexSet> = candidates.iter().collect();
        by_size.sort_by_key(|c| (c.len(), c.first()));
        for c in by_size {
            if !c.intersects(packed) {
                packed = packed | *c;
                lower += 1;
            }
        }
        if lower > budget {
            return None;
        }

        let branch = *candidates.iter().min_by_key(|c| c.len()).expect("nonempty");
        let mut order: Vec<usize> = branch.to_vec();
        order.sort_by_key(|&v| (std::cmp::Reverse((g.closed_neighbors(v) & alive).len()), v));

        let mut excluded = excluded;
        for v in order {
            let next = self.run(
                chosen.with(v),
                covered | g.closed_neighbors(v),
                excluded,
                budget - 1,
            );
            if next.is_some() {
                return next;
            }
            excluded.insert(v);
        }
        None
    }
}

/// Reference computation: subsets in size-then-lexicographic order, each
/// checked on the materialized residual graph.
pub fn solve_oracle(g: &Graph, fam: &Family) -> SolveResult {
    let mut stats = SolveStats::default();
    for size in 0..=g.n() {
        for subset in (0..g.n()).combinations(size) {
            stats.nodes_expanded += 1;
            let d: VertexSet = subset.into_iter().collect();
            if is_isolating(g, fam, d) {
                return SolveResult {
                    iota: size,
                    witness: d,
                    stats,
                };
            }
        }
    }
    unreachable!("V(G) is always isolating")
}

/// `γ(G) = ι(G, K1)`.
pub fn domination_number(g: &Graph) -> usize {
    let k1 = Pattern::new(crate::graph::named::complete(1)).expect("K1 is nonempty");
    solve(g, &Family::single(k1)).iota
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn fam(g: Graph) -> Family {
        Family::single(Pattern::new(g).unwrap())
    }

    #[test]
    fn family_free_examples() {
        assert!(is_family_free(&path(5), &Family::AllCycles));
        assert!(!is_family_free(&cycle(5), &Family::AllCycles));
        assert!(is_family_free(&cycle(6), &fam(star(3))));
        assert!(Family::patterns(vec![]).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&cycle(5), &fam(complete(2))).iota, 2);
        let r = solve(&cycle(6), &fam(path(3)));
        assert_eq!(r.iota, 2);
        assert_eq!(r.witness.to_vec(), vec![0, 3]);
        assert_eq!(solve(&complete(1), &fam(complete(1))).iota, 1);
        let empty = solve(&empty(0), &fam(complete(1)));
        assert_eq!((empty.iota, empty.witness), (0, VertexSet::EMPTY));
        let free = solve(&cycle(6), &fam(star(3)));
        assert_eq!((free.iota, free.witness), (0, VertexSet::EMPTY));
    }

    #[test]
    fn oracle_examples() {
        let r = solve_oracle(&path(4), &fam(complete(2)));
        assert_eq!(r.iota, 1);
        assert!(r.witness == VertexSet::singleton(1) || r.witness == VertexSet::singleton(2));
        assert_eq!(solve_oracle(&complete(4), &fam(complete(3))).iota, 1);
    }

    #[test]
    fn two_triangles_joined_by_an_edge() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
            .unwrap();
        assert_eq!(g.m(), 7);
        let f = fam(complete(3));
        let fast = solve(&g, &f);
        let slow = solve_oracle(&g, &f);
        assert_eq!(fast.iota, slow.iota);
        assert_eq!(slow.iota, 1);
        assert!(is_isolating(&g, &f, fast.witness));
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_number(&cycle(4)), 2);
        for n in 1..8 {
            assert_eq!(domination_number(&complete(n)), 1);
        }
        assert_eq!(domination_number(&path(6)), 2);
        assert_eq!(domination_number(&empty(0)), 0);
    }

    #[test]
    fn cycles_family() {
        assert_eq!(solve(&complete(3), &Family::AllCycles).iota, 1);
        let two = cycle(4).disjoint_union(&cycle(4)).unwrap();
        assert_eq!(solve(&two, &Family::AllCycles).iota, 2);
        assert_eq!(
            shortest_cycle_in(&complete(5), complete(5).vertices())
                .unwrap()
                .len(),
            3
        );
        let c7 = cycle(7);
        assert_eq!(shortest_cycle_in(&c7, c7.vertices()), Some(c7.vertices()));
    }

    #[test]
    fn forced_vertices() {
        let g = path(7);
        let f = fam(complete(2));
        assert_eq!(solve(&g, &f).iota, 2);
        let forced = solve_with_forced(&g, &f, VertexSet::singleton(0));
        assert!(forced.witness.contains(0));
        assert!(is_isolating(&g, &f, forced.witness));
        assert_eq!(forced.iota, 2);
        let both_ends: VertexSet = [0, 6].into_iter().collect();
        assert_eq!(solve_with_forced(&g, &f, both_ends).iota, 3);
    }

    #[test]
    fn multi_pattern_family() {
        let f = Family::patterns(vec![
            Pattern::new(complete(3)).unwrap(),
            Pattern::new(star(3)).unwrap(),
        ])
        .unwrap();
        for g in [cycle(6), complete(4), path(6), star(4)] {
            assert_eq!(solve(&g, &f).iota, solve_oracle(&g, &f).iota, "{g:?}");
        }
    }
}
