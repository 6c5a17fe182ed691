//! Checks over generated pure special graphs and over gluings of them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{require_k3, SuiteReport, SuiteResult, VerifyError};
use crate::canon::is_isomorphic;
use crate::constructions::{
    enumerate_f_plus_e, enumerate_pure_special, ExtremalClass, Recognizer, SpecialGraph,
};
use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6_string;
use crate::pattern::Pattern;
use crate::solver::{solve, solve_with_forced, Family};

#[derive(Debug, Clone, Copy)]
pub struct CorpusConfig {
    /// Largest number of constituents in the generated corpus.
    pub q_max: usize,
    pub seed: u64,
    /// Random gluings tried for the two-graph and the multi-graph suites each.
    pub gluing_trials: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            q_max: 3,
            seed: 0,
            gluing_trials: 200,
        }
    }
}

/// Total constituents allowed in one glued graph.
const GLUE_Q_MAX: usize = 4;

fn g6(g: &Graph) -> String {
    to_graph6_string(g).unwrap_or_else(|_| format!("{g:?}"))
}

/// Disjoint union of `parts` plus one random edge from the first part to each
/// of the others.
fn glue(parts: &[&Graph], rng: &mut ChaCha8Rng) -> Graph {
    let mut g = parts[0].clone();
    let mut offsets = vec![0];
    for part in &parts[1..] {
        offsets.push(g.n());
        g = g.disjoint_union(part).expect("glued graph fits");
    }
    for j in 1..parts.len() {
        let u = rng.gen_range(0..parts[0].n());
        let v = offsets[j] + rng.gen_range(0..parts[j].n());
        g.add_edge(u, v);
    }
    g
}

/// Runs the corpus suites for a pattern with a dominating vertex and at least
/// three edges.
pub fn verify_special_corpus(p: &Pattern, cfg: &CorpusConfig) -> Result<SuiteReport, VerifyError> {
    require_k3(p)?;
    let fam = Family::single(p.clone());
    let k = p.edges();

    let mut corpus: Vec<(usize, SpecialGraph)> = Vec::new();
    for q in 1..=cfg.q_max {
        for s in enumerate_pure_special(p, q * (k + 2) - 1)? {
            corpus.push((q, s));
        }
    }
    let f_plus_e = enumerate_f_plus_e(p);
    let glue_max_n = GLUE_Q_MAX * (p.order() + 1);
    let recognizer = Recognizer::new(p, glue_max_n.max(cfg.q_max * (p.order() + 1)));

    let mut recognition = SuiteResult::new("recognition");
    let mut equality = SuiteResult::new("equality");
    let mut forced = SuiteResult::new("forced-vertex");
    let mut deletion = SuiteResult::new("vertex-deletion");
    let mut pairs = SuiteResult::new("two-constituents");

    for (q, s) in &corpus {
        let g = &s.graph;
        let iota = solve(g, &fam).iota;
        recognition.check(recognizer.classify(g) == ExtremalClass::PureSpecial, || {
            format!("{} not recognized as pure special", g6(g))
        });
        equality.check(iota == *q && (k + 2) * iota == g.m() + 1, || {
            format!("{}: iota {iota}, q {q}", g6(g))
        });
        for x in g.vertices() {
            let r = solve_with_forced(g, &fam, VertexSet::singleton(x)).iota;
            forced.check(r == iota, || format!("{} x={x}: {r} != {iota}", g6(g)));
        }
        let quotient = s.layout.quotient_vertices();
        for x in g.vertices() - quotient {
            let rest = g.delete(VertexSet::singleton(x)).graph;
            // With one constituent, deleting a leaf of F can leave a copy of F
            // made from the connection vertex.
            if *q == 1 && g.degree(x) == 1 && is_isomorphic(&rest, p.graph()) {
                continue;
            }
            let r = solve(&rest, &fam).iota;
            deletion.check(r + 1 == iota, || {
                format!("{} x={x}: {r} + 1 != {iota}", g6(g))
            });
        }
        for i in 0..*q {
            for j in i + 1..*q {
                for x in s.layout.constituent_vertices(i) {
                    for y in s.layout.constituent_vertices(j) {
                        let d = VertexSet::singleton(x).with(y);
                        let r = solve_with_forced(g, &fam, d).iota;
                        pairs.check(r == iota, || {
                            format!("{} x={x} y={y}: {r} != {iota}", g6(g))
                        });
                    }
                }
            }
        }
    }
    for g in &f_plus_e {
        let iota = solve(g, &fam).iota;
        recognition.check(recognizer.classify(g) == ExtremalClass::FPlusE, || {
            format!("{} not recognized as F+e", g6(g))
        });
        for x in g.vertices() {
            let r = solve_with_forced(g, &fam, VertexSet::singleton(x)).iota;
            forced.check(r == iota, || format!("{} x={x}: {r} != {iota}", g6(g)));
        }
    }

    let mut glue_two = SuiteResult::new("gluing-two");
    let mut glue_multi = SuiteResult::new("gluing-multi");
    // Pure special graphs, then F+e graphs, each with its number of
    // constituents; an F+e graph counts as one.
    let mut gluable: Vec<(usize, &Graph)> = corpus
        .iter()
        .filter(|(q, _)| *q < GLUE_Q_MAX)
        .map(|(q, s)| (*q, &s.graph))
        .collect();
    let pure_count = gluable.len();
    gluable.extend(f_plus_e.iter().map(|g| (1, g)));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if pure_count > 0 {
        let suites = [
            (&mut glue_two, 2usize, &gluable[..pure_count]),
            (&mut glue_multi, 3, &gluable[..]),
        ];
        for (suite, parts_wanted, pool) in suites {
            let mut t = 0;
            while t < cfg.gluing_trials {
                let picked: Vec<(usize, &Graph)> = (0..parts_wanted)
                    .map(|_| *pool.choose(&mut rng).expect("nonempty"))
                    .collect();
                // Oversized draws are redrawn; the pool always has q = 1 graphs.
                if picked.iter().map(|(q, _)| q).sum::<usize>() > GLUE_Q_MAX {
                    continue;
                }
                t += 1;
                let graphs: Vec<&Graph> = picked.iter().map(|(_, g)| *g).collect();
                let g = glue(&graphs, &mut rng);
                let iota = solve(&g, &fam).iota;
                if (k + 2) * iota == g.m() + 1 {
                    suite.check(recognizer.classify(&g).is_extremal(), || {
                        format!("{} attains the bound but is not extremal", g6(&g))
                    });
                } else {
                    suite.check((k + 2) * iota <= g.m() + 1, || {
                        format!("{} exceeds the bound", g6(&g))
                    });
                }
            }
        }
    }

    Ok(SuiteReport {
        suite: "special-corpus".into(),
        pattern: Some(p.name().to_string()),
        seed: Some(cfg.seed),
        results: vec![
            recognition,
            equality,
            forced,
            deletion,
            pairs,
            glue_two,
            glue_multi,
        ],
    })
}
