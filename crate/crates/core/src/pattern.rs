//! Target graphs `F` and detection of (non-induced) `F`-copies in a host.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{named, Graph, VertexSet};
use crate::graph6::{parse_graph6, Graph6Error};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern graph must have at least one vertex")]
    Empty,
    #[error("unknown pattern name {0:?}")]
    UnknownName(String),
    #[error("pattern graph6: {0}")]
    Graph6(#[from] Graph6Error),
}

/// A pattern graph `F` with cached metadata.
#[derive(Clone)]
pub struct Pattern {
    name: String,
    graph: Graph,
    edges: usize,
    order: usize,
    dominating: VertexSet,
    domination_number: usize,
    plan: MatchPlan,
}

/// Pattern vertex order for the backtracking matcher. `earlier[i]` holds the
/// positions `< i` adjacent to `order[i]`.
#[derive(Clone, Debug)]
struct MatchPlan {
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self, PatternError> {
        let name = crate::graph6::to_graph6_string(&graph).unwrap_or_else(|_| "custom".into());
        Self::named(name, graph)
    }

    pub fn named(name: impl Into<String>, graph: Graph) -> Result<Self, PatternError> {
        let order = graph.n();
        if order == 0 {
            return Err(PatternError::Empty);
        }
        let full = graph.vertices();
        let dominating: VertexSet = (0..order)
            .filter(|&v| graph.closed_neighbors(v) == full)
            .collect();
        let domination_number = if dominating.is_empty() {
            min_dominating_size(&graph)
        } else {
            1
        };
        let plan = MatchPlan::new(&graph, dominating);
        Ok(Pattern {
            name: name.into(),
            edges: graph.m(),
            order,
            dominating,
            domination_number,
            plan,
            graph,
        })
    }

    /// Parses a pattern name such as `paw`, `k<n>`, `p<n>`, `c<n>` or `k1_<k>`
    /// (the star `K_{1,k}`). Anything else is read as graph6.
    pub fn parse(spec: &str) -> Result<Self, PatternError> {
        let lower = spec.to_ascii_lowercase();
        let num = |s: &str| s.parse::<usize>().ok().filter(|&v| v <= 63);
        let graph = if lower == "paw" {
            Some(named::paw())
        } else if let Some(k) = lower.strip_prefix("k1_").and_then(num) {
            Some(named::star(k))
        } else if let Some(n) = lower.strip_prefix('k').and_then(num).filter(|&n| n >= 1) {
            Some(named::complete(n))
        } else if let Some(n) = lower.strip_prefix('p').and_then(num).filter(|&n| n >= 1) {
            Some(named::path(n))
        } else {
            lower
                .strip_prefix('c')
                .and_then(num)
                .filter(|&n| n >= 3)
                .map(named::cycle)
        };
        match graph {
            Some(g) => Self::named(lower, g),
            None => {
                let g = parse_graph6(spec.as_bytes())?;
                Self::named(spec, g)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `k = |E(F)|`.
    pub fn edges(&self) -> usize {
        self.edges
    }

    /// `ℓ = |V(F)|`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dominating(&self) -> VertexSet {
        self.dominating
    }

    pub fn domination_number(&self) -> usize {
        self.domination_number
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }
}

impl std::fmt::Debug for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pattern")
            .field("name", &self.name)
            .field("k", &self.edges)
            .field("ell", &self.order)
            .field("dominating", &self.dominating)
            .field("gamma", &self.domination_number)
            .finish()
    }
}

/// Smallest dominating set size by subset search; patterns are tiny.
fn min_dominating_size(g: &Graph) -> usize {
    let n = g.n();
    let full = g.vertices();
    (1..=n)
        .find(|&s| {
            itertools::Itertools::combinations(0..n, s)
                .any(|c| g.closed_neighborhood(c.into_iter().collect()) == full)
        })
        .unwrap_or(0)
}

impl MatchPlan {
    fn new(f: &Graph, dominating: VertexSet) -> Self {
        let n = f.n();
        let degree: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
        let mut placed = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        let start = dominating.first().unwrap_or_else(|| {
            (0..n)
                .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
                .unwrap()
        });
        order.push(start);
        placed.insert(start);
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| {
                    (
                        (f.neighbors(v) & placed).len(),
                        degree[v],
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            order.push(next);
            placed.insert(next);
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(i, &a)| (0..i).filter(|&j| f.has_edge(a, order[j])).collect())
            .collect();
        MatchPlan {
            order,
            earlier,
            degree,
        }
    }
}

/// Calls `visit` with the vertex set of every embedding of `p` into the
/// subgraph of `g` induced by `alive`. Sets may repeat across embeddings.
pub fn for_each_copy_in<B>(
    g: &Graph,
    alive: VertexSet,
    p: &Pattern,
    mut visit: impl FnMut(VertexSet) -> ControlFlow<B>,
) -> Option<B> {
    let alive = alive & g.vertices();
    if alive.len() < p.order {
        return None;
    }
    let mut images = vec![usize::MAX; p.order];
    match extend(g, alive, p, 0, VertexSet::EMPTY, &mut images, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

fn extend<B>(
    g: &Graph,
    alive: VertexSet,
    p: &Pattern,
    depth: usize,
    used: VertexSet,
    images: &mut [usize],
    visit: &mut impl FnMut(VertexSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let plan = &p.plan;
    if depth == p.order {
        return visit(used);
    }
    let a = plan.order[depth];
    let mut candidates = alive - used;
    for &j in &plan.earlier[depth] {
        candidates = candidates & g.neighbors(images[j]);
    }
    let need = plan.degree[a];
    for u in candidates {
        if (g.neighbors(u) & alive).len() < need {
            continue;
        }
        images[depth] = u;
        extend(g, alive, p, depth + 1, used.with(u), images, visit)?;
    }
    ControlFlow::Continue(())
}

/// Vertex set of some `F`-copy inside `g[alive]`, if any.
pub fn find_copy_in(g: &Graph, alive: VertexSet, p: &Pattern) -> Option<VertexSet> {
    for_each_copy_in(g, alive, p, ControlFlow::Break)
}

pub fn contains_copy(g: &Graph, p: &Pattern) -> Option<VertexSet> {
    find_copy_in(g, g.vertices(), p)
}

/// Distinct vertex sets of `F`-copies inside `g[alive]`, in lexicographic
/// order of their sorted member lists, truncated to `limit`.
pub fn enumerate_copies_in(
    g: &Graph,
    alive: VertexSet,
    p: &Pattern,
    limit: usize,
) -> Vec<VertexSet> {
    let mut seen = std::collections::HashSet::new();
    for_each_copy_in::<()>(g, alive, p, |s| {
        seen.insert(s);
        ControlFlow::Continue(())
    });
    let mut sets: Vec<VertexSet> = seen.into_iter().collect();
    sets.sort_by_cached_key(|s| s.to_vec());
    sets.truncate(limit);
    sets
}

pub fn enumerate_copies(g: &Graph, p: &Pattern, limit: usize) -> Vec<VertexSet> {
    enumerate_copies_in(g, g.vertices(), p, limit)
}
