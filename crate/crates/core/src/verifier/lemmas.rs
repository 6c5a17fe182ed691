//! Fixed-seed randomized checks of the general isolation lemmas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SuiteReport, SuiteResult};
use crate::graph::{named, Graph, VertexSet};
use crate::graph6::to_graph6_string;
use crate::pattern::Pattern;
use crate::solver::{is_isolating, solve, Family};

#[derive(Debug, Clone, Copy)]
pub struct LemmaConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest random host (or host component) order.
    pub n_max: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            seed: 0,
            trials: 1000,
            n_max: 9,
        }
    }
}

fn families() -> Vec<(&'static str, Family)> {
    let pat = |g: Graph| Family::single(Pattern::new(g).expect("nonempty"));
    vec![
        ("k2", pat(named::complete(2))),
        ("k3", pat(named::complete(3))),
        ("p3", pat(named::path(3))),
        ("k1_3", pat(named::star(3))),
        ("cycles", Family::AllCycles),
    ]
}

fn random_graph(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Graph {
    let n = rng.gen_range(n_min..=n_max);
    let p: f64 = rng.gen_range(0.15..0.7);
    let mut g = named::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_subset(rng: &mut ChaCha8Rng, of: VertexSet) -> VertexSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn g6(g: &Graph) -> String {
    to_graph6_string(g).unwrap_or_else(|_| format!("{g:?}"))
}

/// Runs every randomized lemma suite from one seed.
pub fn verify_lemma_suites(cfg: &LemmaConfig) -> SuiteReport {
    let fams = families();
    let mut deletion = SuiteResult::new("deletion");
    let mut additivity = SuiteResult::new("component-additivity");
    let mut partition = SuiteResult::new("partition");
    let mut monotone = SuiteResult::new("monotone-extension");
    let mut witness = SuiteResult::new("witness-validity");
    let n_max = cfg.n_max.max(3);

    // Each suite draws from its own stream.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for t in 0..cfg.trials {
        let (name, fam) = &fams[t % fams.len()];
        let g = random_graph(&mut rng, 1, n_max);
        let x = random_subset(&mut rng, g.vertices());
        let y = random_subset(&mut rng, g.closed_neighborhood(x));
        let whole = solve(&g, fam).iota;
        let rest = solve(&g.delete(y).graph, fam).iota;
        deletion.check(whole <= x.len() + rest, || {
            format!(
                "{name}: {} X={x} Y={y}: {whole} > {} + {rest}",
                g6(&g),
                x.len()
            )
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    for t in 0..cfg.trials {
        let (name, fam) = &fams[t % fams.len()];
        debug_assert!(fam.all_connected());
        let parts = rng.gen_range(2..=3);
        let mut g = named::empty(0);
        for _ in 0..parts {
            let comp_n = (n_max / parts).max(1);
            g = g
                .disjoint_union(&random_graph(&mut rng, 1, comp_n))
                .expect("fits");
        }
        let total = solve(&g, fam).iota;
        let sum: usize = g
            .components()
            .into_iter()
            .map(|c| solve(&g.induced(c).graph, fam).iota)
            .sum();
        additivity.check(total == sum, || {
            format!("{name}: {}: {total} != {sum}", g6(&g))
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    for t in 0..cfg.trials {
        let (name, fam) = &fams[t % fams.len()];
        let a = random_graph(&mut rng, 1, (n_max / 2).max(2));
        let b = random_graph(&mut rng, 1, (n_max / 2).max(2));
        let ra = solve(&a, fam);
        let rb = solve(&b, fam);
        let shift = a.n();
        let mut g = a.disjoint_union(&b).expect("fits");
        let dominated = a.closed_neighborhood(ra.witness)
            | VertexSet::from_bits(b.closed_neighborhood(rb.witness).bits() << shift);
        let mut pairs: Vec<(usize, usize)> = (0..a.n())
            .flat_map(|u| (shift..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| dominated.contains(u) || dominated.contains(v))
            .collect();
        pairs.shuffle(&mut rng);
        let take = rng.gen_range(0..=pairs.len().min(6));
        for &(u, v) in &pairs[..take] {
            g.add_edge(u, v);
        }
        let glued = solve(&g, fam).iota;
        partition.check(glued <= ra.iota + rb.iota, || {
            format!("{name}: {}: {glued} > {} + {}", g6(&g), ra.iota, rb.iota)
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    for t in 0..cfg.trials {
        let (name, fam) = &fams[t % fams.len()];
        let g = random_graph(&mut rng, 1, n_max);
        let r = solve(&g, fam);
        witness.check(
            r.witness.len() == r.iota && is_isolating(&g, fam, r.witness),
            || format!("{name}: {}: witness {} invalid", g6(&g), r.witness),
        );
        let extra = rng.gen_range(0..g.n());
        let bigger = r.witness.with(extra);
        monotone.check(is_isolating(&g, fam, bigger), || {
            format!("{name}: {}: {} stops isolating", g6(&g), bigger)
        });
    }

    SuiteReport {
        suite: "lemmas".into(),
        pattern: None,
        seed: Some(cfg.seed),
        results: vec![deletion, additivity, partition, monotone, witness],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = LemmaConfig {
            seed: 7,
            trials: 60,
            n_max: 7,
        };
        let a = verify_lemma_suites(&cfg);
        assert!(a.passed(), "{}", a.summary_json());
        assert_eq!(a, verify_lemma_suites(&cfg));
        assert!(a.results.iter().all(|r| r.trials == 60));
    }

    #[test]
    fn degenerate_deletion_trial() {
        let g = named::cycle(5);
        let fam = Family::AllCycles;
        let whole = solve(&g, &fam).iota;
        let rest = solve(&g.delete(VertexSet::EMPTY).graph, &fam).iota;
        assert!(whole <= rest);
    }

    #[test]
    fn single_component_additivity_is_identity() {
        let g = named::cycle(7);
        let fam = Family::single(Pattern::new(named::path(3)).unwrap());
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(
            solve(&g.induced(comps[0]).graph, &fam).iota,
            solve(&g, &fam).iota
        );
    }
}
