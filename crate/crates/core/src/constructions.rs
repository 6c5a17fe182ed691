//! `(m,F)`-special graphs, `F+e` graphs, and recognition of the extremal
//! classes by generate-and-match.
//!
//! A special graph is assembled from `q` constituents, each an `F`-copy `F_i`
//! plus a connection vertex `v_i` joined to a chosen `w_i ∈ V(F_i)`. The
//! connection vertices span a tree (the quotient graph), and a connected
//! remainder graph with `r` edges hangs off `v_q`. Edge counts satisfy
//! `m + 1 = q(k+2) + r` with `0 <= r <= k+1`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::canon::{
    canonical_form, is_isomorphic, rooted_canonical_form, vertex_orbits, CanonicalForm,
};
use crate::enumeration::{enumerate_graphs, EnumSpec};
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::pattern::Pattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("m + 1 = {m_plus_1} is not divisible by k + 2 = {k_plus_2}")]
    NotDivisible { m_plus_1: usize, k_plus_2: usize },
    #[error("remainder edge count r = {r} exceeds k + 1 = {max}")]
    RemainderTooLarge { r: usize, max: usize },
    #[error("remainder graph has {found} edges, expected {expected}")]
    RemainderEdges { expected: usize, found: usize },
    #[error("remainder graph must be connected")]
    RemainderDisconnected,
    #[error("quotient edges do not form a tree on {0} vertices")]
    NotATree(usize),
    #[error("expected {expected} attachment vertices, got {found}")]
    AttachCount { expected: usize, found: usize },
    #[error("attachment vertex {0} is not a vertex of F")]
    AttachOutOfRange(usize),
    #[error("a special graph with q = 0 needs at least one remainder edge budget (r >= 1)")]
    EmptyRemainder,
    #[error("construction needs {0} vertices, beyond what can be built or enumerated")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Recipe for one special graph.
#[derive(Debug, Clone)]
pub struct SpecialSpec {
    pub pattern: Pattern,
    pub q: usize,
    pub r: usize,
    /// `q - 1` edges over constituent indices `0..q`.
    pub quotient_tree: Vec<(usize, usize)>,
    /// Connected remainder graph; its vertex 0 is identified with `v_q`.
    /// With `q >= 1` it has `r` edges, with `q = 0` it is the whole graph and
    /// has `r - 1` edges.
    pub remainder: Graph,
    /// `w_i` per constituent, as a vertex of `F`.
    pub attach: Vec<usize>,
}

impl SpecialSpec {
    pub fn pure(pattern: Pattern, quotient_tree: Vec<(usize, usize)>, attach: Vec<usize>) -> Self {
        SpecialSpec {
            pattern,
            q: attach.len(),
            r: 0,
            quotient_tree,
            remainder: crate::graph::named::empty(1),
            attach,
        }
    }

    pub fn m(&self) -> usize {
        (self.q * (self.pattern.edges() + 2) + self.r).saturating_sub(1)
    }

    pub fn is_pure(&self) -> bool {
        self.r == 0
    }
}

/// Roles of the vertices of a built special graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub q: usize,
    pub r: usize,
    /// `v_1..v_q`; these are the vertices of the quotient graph.
    pub connections: Vec<usize>,
    /// `V(F_i)` per constituent, listed in `F`'s vertex order.
    pub constituents: Vec<Vec<usize>>,
    /// `w_i` per constituent.
    pub attach: Vec<usize>,
    /// Remainder vertices other than `v_q`.
    pub remainder: Vec<usize>,
}

impl Layout {
    pub fn quotient_vertices(&self) -> VertexSet {
        self.connections.iter().copied().collect()
    }

    /// `V(G_i) = {v_i} ∪ V(F_i)`.
    pub fn constituent_vertices(&self, i: usize) -> VertexSet {
        self.constituents[i]
            .iter()
            .copied()
            .collect::<VertexSet>()
            .with(self.connections[i])
    }
}

#[derive(Debug, Clone)]
pub struct SpecialGraph {
    pub graph: Graph,
    pub layout: Layout,
}

/// `q` and `r` from `m + 1 = q(k+2) + r`, `0 <= r <= k+1`.
pub fn division(m: usize, k: usize) -> (usize, usize) {
    ((m + 1) / (k + 2), (m + 1) % (k + 2))
}

fn is_tree(q: usize, edges: &[(usize, usize)]) -> bool {
    if q == 0 {
        return edges.is_empty();
    }
    if edges.len() != q - 1 || edges.iter().any(|&(a, b)| a >= q || b >= q || a == b) {
        return false;
    }
    Graph::from_edges(q, edges).is_ok_and(|t| t.is_connected())
}

pub fn build_special(spec: &SpecialSpec) -> Result<SpecialGraph, ConstructionError> {
    let f = spec.pattern.graph();
    let k = spec.pattern.edges();
    let ell = spec.pattern.order();
    if spec.r > k + 1 {
        return Err(ConstructionError::RemainderTooLarge {
            r: spec.r,
            max: k + 1,
        });
    }
    if !spec.remainder.is_connected() {
        return Err(ConstructionError::RemainderDisconnected);
    }

    if spec.q == 0 {
        if spec.r == 0 {
            return Err(ConstructionError::EmptyRemainder);
        }
        let expected = spec.r - 1;
        if spec.remainder.m() != expected {
            return Err(ConstructionError::RemainderEdges {
                expected,
                found: spec.remainder.m(),
            });
        }
        return Ok(SpecialGraph {
            graph: spec.remainder.clone(),
            layout: Layout {
                q: 0,
                r: spec.r,
                connections: vec![],
                constituents: vec![],
                attach: vec![],
                remainder: (0..spec.remainder.n()).collect(),
            },
        });
    }

    if spec.remainder.m() != spec.r {
        return Err(ConstructionError::RemainderEdges {
            expected: spec.r,
            found: spec.remainder.m(),
        });
    }
    if !is_tree(spec.q, &spec.quotient_tree) {
        return Err(ConstructionError::NotATree(spec.q));
    }
    if spec.attach.len() != spec.q {
        return Err(ConstructionError::AttachCount {
            expected: spec.q,
            found: spec.attach.len(),
        });
    }
    if let Some(&w) = spec.attach.iter().find(|&&w| w >= ell) {
        return Err(ConstructionError::AttachOutOfRange(w));
    }

    let q = spec.q;
    let n = q * (ell + 1) + spec.remainder.n() - 1;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let mut g = Graph::new(n)?;
    let connections: Vec<usize> = (0..q).collect();
    let mut constituents = Vec::with_capacity(q);
    let mut attach = Vec::with_capacity(q);
    for (i, &v) in connections.iter().enumerate() {
        let base = q + i * ell;
        for (a, b) in f.edges() {
            g.add_edge(base + a, base + b);
        }
        let w = base + spec.attach[i];
        g.add_edge(v, w);
        constituents.push((base..base + ell).collect());
        attach.push(w);
    }
    for &(a, b) in &spec.quotient_tree {
        g.add_edge(a, b);
    }
    let rbase = q * (ell + 1);
    let place = |v: usize| if v == 0 { q - 1 } else { rbase + v - 1 };
    for (a, b) in spec.remainder.edges() {
        g.add_edge(place(a), place(b));
    }

    Ok(SpecialGraph {
        graph: g,
        layout: Layout {
            q,
            r: spec.r,
            connections,
            constituents,
            attach,
            remainder: (rbase..n).collect(),
        },
    })
}

/// Labeled trees on `q` vertices, one per isomorphism class, from Prüfer
/// sequences.
pub fn trees_up_to_iso(q: usize) -> Vec<Vec<(usize, usize)>> {
    match q {
        0 | 1 => return vec![vec![]],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let total = q.pow(q as u32 - 2);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(q - 2);
        for _ in 0..q - 2 {
            seq.push(code % q);
            code /= q;
        }
        let edges = prufer_decode(&seq, q);
        let tree = Graph::from_edges(q, &edges).expect("tree fits");
        if seen.insert(canonical_form(&tree)) {
            out.push(edges);
        }
    }
    out
}

fn prufer_decode(seq: &[usize], q: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; q];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(q - 1);
    for &s in seq {
        let leaf = (0..q).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..q).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// One representative vertex per automorphism orbit of `F`.
fn attach_choices(p: &Pattern) -> Vec<usize> {
    vertex_orbits(p.graph())
        .into_iter()
        .map(|o| o.first().unwrap())
        .collect()
}

fn push_unique(
    seen: &mut HashSet<CanonicalForm>,
    out: &mut Vec<SpecialGraph>,
    built: SpecialGraph,
) {
    if seen.insert(canonical_form(&built.graph)) {
        out.push(built);
    }
}

/// All pure `(m,F)`-special graphs up to isomorphism, in generation order.
pub fn enumerate_pure_special(
    p: &Pattern,
    m: usize,
) -> Result<Vec<SpecialGraph>, ConstructionError> {
    let k = p.edges();
    let (q, r) = division(m, k);
    if r != 0 {
        return Err(ConstructionError::NotDivisible {
            m_plus_1: m + 1,
            k_plus_2: k + 2,
        });
    }
    let n = q * (p.order() + 1);
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let reps = attach_choices(p);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for tree in trees_up_to_iso(q) {
        for attach in product(&reps, q) {
            let spec = SpecialSpec::pure(p.clone(), tree.clone(), attach);
            push_unique(&mut seen, &mut out, build_special(&spec)?);
        }
    }
    Ok(out)
}

/// All `(m,F)`-special graphs up to isomorphism, pure or not.
pub fn enumerate_special(p: &Pattern, m: usize) -> Result<Vec<SpecialGraph>, ConstructionError> {
    let k = p.edges();
    let (q, r) = division(m, k);
    if r == 0 {
        return enumerate_pure_special(p, m);
    }
    // A connected graph with e edges has at most e + 1 vertices.
    let remainder_edges = if q == 0 { r - 1 } else { r };
    let remainder_max_n = remainder_edges + 1;
    if remainder_max_n > EnumSpec::BUILTIN_MAX_N {
        return Err(ConstructionError::TooLarge(remainder_max_n));
    }
    let remainders: Vec<Graph> = enumerate_graphs(&EnumSpec {
        n_min: 1,
        n_max: remainder_max_n,
        m_min: remainder_edges,
        m_max: Some(remainder_edges),
        connected_only: true,
    })
    .expect("remainder universe within the built-in cap")
    .collect();

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if q == 0 {
        for g in remainders {
            let spec = SpecialSpec {
                pattern: p.clone(),
                q: 0,
                r,
                quotient_tree: vec![],
                remainder: g,
                attach: vec![],
            };
            push_unique(&mut seen, &mut out, build_special(&spec)?);
        }
        return Ok(out);
    }

    let n = q * (p.order() + 1) + remainder_max_n - 1;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let reps = attach_choices(p);
    // Roots of each remainder, one per rooted isomorphism class.
    let rooted: Vec<Graph> = remainders
        .iter()
        .flat_map(|g| {
            let mut forms = HashSet::new();
            (0..g.n())
                .filter(|&v| forms.insert(rooted_canonical_form(g, v)))
                .map(|v| root_first(g, v))
                .collect::<Vec<_>>()
        })
        .collect();
    for tree in trees_up_to_iso(q) {
        // v_q ranges over every tree vertex: swap it into the last slot.
        for last in 0..q {
            let swap = |x: usize| {
                if x == last {
                    q - 1
                } else if x == q - 1 {
                    last
                } else {
                    x
                }
            };
            let tree: Vec<(usize, usize)> = tree.iter().map(|&(a, b)| (swap(a), swap(b))).collect();
            for attach in product(&reps, q) {
                for rem in &rooted {
                    let spec = SpecialSpec {
                        pattern: p.clone(),
                        q,
                        r,
                        quotient_tree: tree.clone(),
                        remainder: rem.clone(),
                        attach: attach.clone(),
                    };
                    push_unique(&mut seen, &mut out, build_special(&spec)?);
                }
            }
        }
    }
    Ok(out)
}

/// Relabels `g` so that `root` becomes vertex 0.
fn root_first(g: &Graph, root: usize) -> Graph {
    let perm: Vec<usize> = (0..g.n())
        .map(|v| match v {
            _ if v == root => 0,
            _ if v < root => v + 1,
            _ => v,
        })
        .collect();
    g.relabel(&perm)
}

fn product(choices: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

/// `{F + e : e ∈ E(F̄)}` up to isomorphism.
pub fn enumerate_f_plus_e(p: &Pattern) -> Vec<Graph> {
    let f = p.graph();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in f.complement().edges() {
        let mut g = f.clone();
        g.add_edge(u, v);
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// Extremal class of a connected graph relative to `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalClass {
    PureSpecial,
    FPlusE,
    NonExtremal,
    SpecialPairException,
}

impl ExtremalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalClass::PureSpecial => "pure-special",
            ExtremalClass::FPlusE => "f-plus-e",
            ExtremalClass::NonExtremal => "non-extremal",
            ExtremalClass::SpecialPairException => "special-pair-exception",
        }
    }

    pub fn is_extremal(self) -> bool {
        matches!(self, ExtremalClass::PureSpecial | ExtremalClass::FPlusE)
    }
}

impl std::fmt::Display for ExtremalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether `(G, F)` is special: `G ≅ F`, or `F ≅ P3` and `G ≅ C6`.
pub fn is_special_pair(g: &Graph, p: &Pattern) -> bool {
    if is_isomorphic(g, p.graph()) {
        return true;
    }
    is_isomorphic(p.graph(), &crate::graph::named::path(3))
        && is_isomorphic(g, &crate::graph::named::cycle(6))
}

/// Precomputed canonical forms of the extremal classes for one pattern, for
/// hosts on at most `max_n` vertices.
#[derive(Debug, Clone)]
pub struct Recognizer {
    pattern: Pattern,
    max_n: usize,
    pattern_form: CanonicalForm,
    f_plus_e: HashSet<CanonicalForm>,
    /// Pure special forms keyed by `q`.
    pure: HashMap<usize, HashSet<CanonicalForm>>,
}

impl Recognizer {
    pub fn new(pattern: &Pattern, max_n: usize) -> Self {
        let ell = pattern.order();
        let k = pattern.edges();
        let mut pure = HashMap::new();
        let mut q = 1;
        while q * (ell + 1) <= max_n.min(MAX_VERTICES) {
            let m = q * (k + 2) - 1;
            let forms = enumerate_pure_special(pattern, m)
                .expect("divisible and within capacity")
                .iter()
                .map(|s| canonical_form(&s.graph))
                .collect();
            pure.insert(q, forms);
            q += 1;
        }
        Recognizer {
            pattern: pattern.clone(),
            max_n,
            pattern_form: canonical_form(pattern.graph()),
            f_plus_e: enumerate_f_plus_e(pattern)
                .iter()
                .map(canonical_form)
                .collect(),
            pure,
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn is_special_pair(&self, g: &Graph) -> bool {
        if g.n() == self.pattern.order() && g.m() == self.pattern.edges() {
            return canonical_form(g) == self.pattern_form;
        }
        is_special_pair(g, &self.pattern)
    }

    pub fn is_pure_special(&self, g: &Graph) -> bool {
        let k = self.pattern.edges();
        let (q, r) = division(g.m(), k);
        if r != 0 || q == 0 || g.n() != q * (self.pattern.order() + 1) {
            return false;
        }
        match self.pure.get(&q) {
            Some(forms) => forms.contains(&canonical_form(g)),
            None => {
                assert!(g.n() > self.max_n);
                enumerate_pure_special(&self.pattern, g.m())
                    .map(|all| all.iter().any(|s| is_isomorphic(&s.graph, g)))
                    .unwrap_or(false)
            }
        }
    }

    pub fn is_f_plus_e(&self, g: &Graph) -> bool {
        g.n() == self.pattern.order()
            && g.m() == self.pattern.edges() + 1
            && self.f_plus_e.contains(&canonical_form(g))
    }

    pub fn classify(&self, g: &Graph) -> ExtremalClass {
        if self.is_special_pair(g) {
            ExtremalClass::SpecialPairException
        } else if self.is_pure_special(g) {
            ExtremalClass::PureSpecial
        } else if self.is_f_plus_e(g) {
            ExtremalClass::FPlusE
        } else {
            ExtremalClass::NonExtremal
        }
    }
}

/// Classifies `g` against `F` by matching it with the generated classes.
pub fn recognize_extremal(g: &Graph, p: &Pattern) -> ExtremalClass {
    Recognizer::new(p, g.n()).classify(g)
}

/// Whether `g` is some `(m,F)`-special graph with `m = |E(g)|`, pure or not.
pub fn is_special_graph(g: &Graph, p: &Pattern) -> Result<bool, ConstructionError> {
    let all = enumerate_special(p, g.m())?;
    let form = canonical_form(g);
    Ok(all
        .iter()
        .any(|s| s.graph.n() == g.n() && canonical_form(&s.graph) == form))
}

/// Per-graph classification record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub m: usize,
    pub iota: usize,
    pub bound_num: usize,
    pub bound_den: usize,
    pub attains: bool,
    pub class: ExtremalClass,
}

impl Verdict {
    pub fn new(m: usize, iota: usize, k: usize, class: ExtremalClass) -> Self {
        Verdict {
            m,
            iota,
            bound_num: m + 1,
            bound_den: k + 2,
            attains: iota * (k + 2) == m + 1,
            class,
        }
    }

    /// `(k+2)·ι <= m+1`.
    pub fn within_bound(&self) -> bool {
        self.iota * self.bound_den <= self.bound_num
    }
}
