//! Simple undirected graphs on at most 64 vertices, stored as one bitmask row
//! per vertex.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, capacity is {MAX_VERTICES}")]
    Capacity(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A set of vertex ids packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

/// Set difference.
impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

/// Complement within the 64-bit universe; intersect with [`VertexSet::full`]
/// to stay inside a host graph.
impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// Result of [`Graph::delete`] / [`Graph::induced`]: the relabeled graph and
/// the maps between old and new vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let full = VertexSet::full(n);
        for (v, row) in rows.iter().enumerate() {
            if row.contains(v) {
                return Err(GraphError::SelfLoop(v));
            }
            if let Some(w) = (*row - full).first() {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            for w in row.iter() {
                if !rows[w].contains(v) {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Panicking variant of [`Graph::try_add_edge`] for graphs built in code.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Result<usize, GraphError> {
        if self.n() == MAX_VERTICES {
            return Err(GraphError::Capacity(MAX_VERTICES + 1));
        }
        self.adj.push(VertexSet::EMPTY);
        Ok(self.adj.len() - 1)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `N[X] = X ∪ ⋃_{v∈X} N(v)`.
    pub fn closed_neighborhood(&self, x: VertexSet) -> VertexSet {
        x.iter().fold(x, |acc, v| acc | self.adj[v])
    }

    /// Number of edges with both ends in `within`.
    pub fn edges_within(&self, within: VertexSet) -> usize {
        within
            .iter()
            .map(|v| (self.adj[v] & within).len())
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `keep`, relabeled densely in increasing id order.
    pub fn induced(&self, keep: VertexSet) -> Relabeled {
        let keep = keep & self.vertices();
        let new_to_old = keep.to_vec();
        let mut old_to_new = vec![None; self.n()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let adj = new_to_old
            .iter()
            .map(|&old| {
                (self.adj[old] & keep)
                    .iter()
                    .map(|w| old_to_new[w].unwrap())
                    .collect()
            })
            .collect();
        Relabeled {
            graph: Graph { adj },
            old_to_new,
            new_to_old,
        }
    }

    /// `G - X`.
    pub fn delete(&self, x: VertexSet) -> Relabeled {
        self.induced(self.vertices() - x)
    }

    /// Components in order of their minimum vertex id.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Components of the subgraph induced by `alive`.
    pub fn components_within(&self, alive: VertexSet) -> Vec<VertexSet> {
        let mut rest = alive & self.vertices();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.reach(start, rest);
            rest = rest - comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `alive`.
    pub fn reach(&self, start: usize, alive: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v];
            }
            frontier = (next & alive) - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// The null graph is not connected; `K1` is.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.reach(0, self.vertices()) == self.vertices()
    }

    /// Whether the subgraph induced by `alive` has no cycle.
    pub fn is_forest_within(&self, alive: VertexSet) -> bool {
        let alive = alive & self.vertices();
        self.edges_within(alive) + self.components_within(alive).len() == alive.len()
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for (v, row) in self.adj.iter().enumerate() {
            adj[perm[v]] = row.iter().map(|w| perm[w]).collect();
        }
        Graph { adj }
    }

    /// Places `other` after `self`, shifting its ids by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let shift = self.n();
        let mut g = Graph::new(shift + other.n())?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, row)| (full - *row).without(v))
            .collect();
        Graph { adj }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Small named graphs.
pub mod named {
    use super::Graph;

    pub fn empty(n: usize) -> Graph {
        Graph::new(n).expect("capacity")
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `P_n`: the path on `n` vertices `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Graph {
        let mut g = empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// `C_n` on `0..n` in cyclic order, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        let mut g = empty(k + 1);
        for v in 1..=k {
            g.add_edge(0, v);
        }
        g
    }

    /// Triangle `{0,1,2}` with pendant vertex 3 on vertex 0.
    pub fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }
}
