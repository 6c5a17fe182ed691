#![allow(dead_code)]

use std::collections::HashSet;

use isolation_core::{canonical_form, named, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = named::empty(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

/// Isomorphism classes on exactly `n` vertices, counted by canonicalizing
/// every labeled graph.
pub fn labeled_class_count(n: usize, connected_only: bool) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut seen = HashSet::new();
    for mask in 0..1u64 << pairs {
        let g = graph_from_mask(n, mask);
        if !connected_only || g.is_connected() {
            seen.insert(canonical_form(&g));
        }
    }
    seen.len()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = named::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Whether some injection of `f` into `g` maps every edge of `f` onto an edge
/// of `g`, by trying every ordered choice of image vertices.
pub fn brute_contains(g: &Graph, f: &Graph) -> bool {
    fn extend(g: &Graph, f: &Graph, image: &mut Vec<usize>, used: VertexSet) -> bool {
        let i = image.len();
        if i == f.n() {
            return true;
        }
        for v in g.vertices() - used {
            if (0..i).all(|j| !f.has_edge(i, j) || g.has_edge(v, image[j])) {
                image.push(v);
                if extend(g, f, image, used.with(v)) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    extend(g, f, &mut Vec::new(), VertexSet::EMPTY)
}
