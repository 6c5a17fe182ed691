//! Exact canonical labeling for small graphs.
//!
//! Individualization-refinement: the vertex partition is refined to an
//! equitable one, then a vertex of the first smallest non-singleton cell is
//! individualized and the search recurses. Every discrete leaf yields a
//! relabeled adjacency matrix; the largest one is canonical. Automorphisms
//! found at equal leaves prune sibling branches lying in a common orbit and
//! trigger a backjump to the point where the current path left the first one.

use std::fmt;

use crate::graph::{Graph, VertexSet};

/// Relabeling-invariant byte string; equal forms ⇔ isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a canonical search.
#[derive(Debug, Clone)]
pub struct Labeling {
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
    /// Automorphisms discovered during the search, as vertex maps.
    pub automorphisms: Vec<Vec<usize>>,
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_colored(g, &vec![0; g.n()])
}

/// Canonical labeling respecting a vertex coloring: only color-preserving
/// relabelings are considered, and color classes occupy consecutive labels in
/// increasing color order.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.n());
    let mut classes: Vec<u32> = colors.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let cells: Vec<VertexSet> = classes
        .iter()
        .map(|&c| (0..g.n()).filter(|&v| colors[v] == c).collect())
        .collect();

    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.run(cells, &mut Vec::new());
    let (_, perm) = search.best.expect("search reaches at least one leaf");
    Labeling {
        perm,
        automorphisms: search.automorphisms,
    }
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g).perm)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    encode(&canonical_graph(g), &[])
}

/// Canonical form of `g` with vertex `root` distinguished.
pub fn rooted_canonical_form(g: &Graph, root: usize) -> CanonicalForm {
    let colors: Vec<u32> = (0..g.n()).map(|v| (v != root) as u32).collect();
    colored_canonical_form(g, &colors)
}

pub fn colored_canonical_form(g: &Graph, colors: &[u32]) -> CanonicalForm {
    let labeling = canonical_labeling_colored(g, colors);
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    encode(&g.relabel(&labeling.perm), &sorted)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.m() == b.m()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_form(a) == canonical_form(b)
}

/// Orbits of the automorphism group on vertices, each as a set, ordered by
/// minimum member. Two vertices share an orbit iff their rooted canonical
/// forms coincide.
pub fn vertex_orbits(g: &Graph) -> Vec<VertexSet> {
    let forms: Vec<CanonicalForm> = (0..g.n()).map(|v| rooted_canonical_form(g, v)).collect();
    let mut assigned = VertexSet::EMPTY;
    let mut orbits = Vec::new();
    for v in 0..g.n() {
        if assigned.contains(v) {
            continue;
        }
        let orbit: VertexSet = (v..g.n()).filter(|&w| forms[w] == forms[v]).collect();
        assigned = assigned | orbit;
        orbits.push(orbit);
    }
    orbits
}

fn encode(g: &Graph, colors: &[u32]) -> CanonicalForm {
    let mut bytes = Vec::with_capacity(1 + 8 * g.n() + 4 * colors.len());
    bytes.push(g.n() as u8);
    for row in g.rows() {
        bytes.extend_from_slice(&row.bits().to_be_bytes());
    }
    for c in colors {
        bytes.extend_from_slice(&c.to_be_bytes());
    }
    CanonicalForm(bytes)
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbours in every cell. Groups replace their parent in place, ordered by
/// that count, so the result depends only on the isomorphism type.
fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell.len() < 2 {
                    continue;
                }
                let count = |v: usize| (g.neighbors(v) & splitter).len();
                let first = count(cell.first().unwrap());
                if cell.iter().all(|v| count(v) == first) {
                    continue;
                }
                let mut keys: Vec<usize> = cell.iter().map(count).collect();
                keys.sort_unstable();
                keys.dedup();
                let parts: Vec<VertexSet> = keys
                    .iter()
                    .map(|&k| cell.iter().filter(|&v| count(v) == k).collect())
                    .collect();
                cells.splice(c..=c, parts);
                continue 'restart;
            }
        }
        return;
    }
}

struct Leaf {
    cert: Vec<u64>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn run(&mut self, mut cells: Vec<VertexSet>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells);

        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);

        let Some(target) = target else {
            return self.leaf(&cells, path);
        };

        let cell = cells[target];
        let mut tried = VertexSet::EMPTY;
        for v in cell {
            if !tried.is_empty() && self.same_orbit_as_tried(v, tried, path) {
                continue;
            }
            let mut child = cells.clone();
            child.splice(target..=target, [VertexSet::singleton(v), cell.without(v)]);
            path.push(v);
            let jump = self.run(child, path);
            path.pop();
            tried.insert(v);
            if let Some(level) = jump {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[VertexSet], path: &[usize]) -> Option<usize> {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell.first().unwrap()] = label;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            cert[perm[v]] = self
                .g
                .neighbors(v)
                .iter()
                .fold(0, |acc, w| acc | 1 << perm[w]);
        }

        let Some(first) = &self.first else {
            self.best = Some((cert.clone(), perm.clone()));
            self.first = Some(Leaf {
                cert,
                perm,
                path: path.to_vec(),
            });
            return None;
        };

        if cert == first.cert {
            let auto = compose_inverse(&first.perm, &perm);
            let level = path
                .iter()
                .zip(&first.path)
                .position(|(a, b)| a != b)
                .unwrap_or(path.len());
            self.automorphisms.push(auto);
            return Some(level);
        }
        let best = self.best.as_ref().unwrap();
        match cert.cmp(&best.0) {
            std::cmp::Ordering::Equal => {
                let auto = compose_inverse(&best.1, &perm);
                self.automorphisms.push(auto);
            }
            std::cmp::Ordering::Greater => self.best = Some((cert, perm)),
            std::cmp::Ordering::Less => {}
        }
        None
    }

    /// Orbit test under the stored automorphisms that fix `path` pointwise.
    fn same_orbit_as_tried(&self, v: usize, tried: VertexSet, path: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for auto in &self.automorphisms {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            for (x, &ax) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, ax));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|t| find(&mut parent, t) == root)
    }
}

/// The automorphism sending `v` to the vertex that `target` labels the way
/// `perm` labels `v`.
fn compose_inverse(target: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; target.len()];
    for (v, &l) in target.iter().enumerate() {
        inv[l] = v;
    }
    perm.iter().map(|&l| inv[l]).collect()
}
