mod common;

use isolation_core::pattern::find_copy_in;
use isolation_core::{
    canonical_form, contains_copy, is_isolating, named, parse_graph6, solve, solve_oracle,
    solve_with_forced, to_graph6_string, Family, Graph, Pattern, VertexSet,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = named::empty(n);
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = VertexSet> {
    any::<u64>().prop_map(move |bits| VertexSet::from_bits(bits) & VertexSet::full(n))
}

fn small_patterns() -> Vec<Pattern> {
    ["k1", "k2", "p3", "k3", "k1_3", "paw"]
        .iter()
        .map(|s| Pattern::parse(s).unwrap())
        .collect()
}

fn families() -> Vec<Family> {
    let mut fams: Vec<Family> = ["k2", "k3", "p3", "k1_3"]
        .iter()
        .map(|s| Family::single(Pattern::parse(s).unwrap()))
        .collect();
    fams.push(Family::AllCycles);
    fams.push(
        Family::patterns(vec![
            Pattern::parse("k3").unwrap(),
            Pattern::parse("k1_3").unwrap(),
        ])
        .unwrap(),
    );
    fams
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(16)) {
        let text = to_graph6_string(&g).unwrap();
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn closed_neighborhood_is_monotone(
        (g, a, b) in arb_graph(12).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_subset(n), arb_subset(n))
        })
    ) {
        let small = a & b;
        prop_assert!(g.closed_neighborhood(small).is_subset(g.closed_neighborhood(a)));
        prop_assert!(a.is_subset(g.closed_neighborhood(a)));
    }

    #[test]
    fn components_partition_vertices(g in arb_graph(14)) {
        let comps = g.components();
        let mut union = VertexSet::EMPTY;
        for c in &comps {
            prop_assert!(!c.intersects(union));
            union = union | *c;
            prop_assert!(g.induced(*c).graph.is_connected());
            for v in *c {
                prop_assert!(g.neighbors(v).is_subset(*c));
            }
        }
        prop_assert_eq!(union, g.vertices());
        prop_assert_eq!(comps.len() == 1, g.is_connected());
    }

    #[test]
    fn matcher_agrees_with_brute_force(g in arb_graph(7)) {
        for p in small_patterns() {
            let found = contains_copy(&g, &p);
            prop_assert_eq!(found.is_some(), common::brute_contains(&g, p.graph()), "{}", p.name());
            if let Some(set) = found {
                prop_assert_eq!(set.len(), p.order());
                prop_assert!(common::brute_contains(&g.induced(set).graph, p.graph()));
            }
        }
    }

    #[test]
    fn copies_survive_added_edges((g, u, v) in arb_graph(8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, 0..n)
    })) {
        prop_assume!(u != v);
        let mut bigger = g.clone();
        bigger.add_edge(u, v);
        for p in small_patterns() {
            if contains_copy(&g, &p).is_some() {
                prop_assert!(contains_copy(&bigger, &p).is_some());
            }
        }
    }

    #[test]
    fn restricted_search_ignores_dead_vertices(
        (g, alive) in arb_graph(8).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_subset(n))
        })
    ) {
        let sub = g.induced(alive);
        for p in small_patterns() {
            let found = find_copy_in(&g, alive, &p);
            prop_assert_eq!(found.is_some(), contains_copy(&sub.graph, &p).is_some());
            if let Some(set) = found {
                prop_assert!(set.is_subset(alive));
            }
        }
    }

    #[test]
    fn solver_matches_oracle(g in arb_graph(7)) {
        for fam in families() {
            let fast = solve(&g, &fam);
            let slow = solve_oracle(&g, &fam);
            prop_assert_eq!(fast.iota, slow.iota);
            prop_assert_eq!(fast.witness.len(), fast.iota);
            prop_assert!(is_isolating(&g, &fam, fast.witness));
            prop_assert!(is_isolating(&g, &fam, slow.witness));
        }
    }

    #[test]
    fn forced_solve_is_between_free_and_free_plus_forced(
        (g, forced) in arb_graph(8).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_subset(n))
        })
    ) {
        for fam in families() {
            let free = solve(&g, &fam).iota;
            let r = solve_with_forced(&g, &fam, forced);
            prop_assert!(forced.is_subset(r.witness));
            prop_assert!(is_isolating(&g, &fam, r.witness));
            prop_assert!(free <= r.iota && r.iota <= free + forced.len());
        }
    }

    #[test]
    fn canonical_form_ignores_labels(
        (g, perm) in arb_graph(10).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let mut sorted = g.degree_sequence();
        sorted.sort();
        let mut other = h.degree_sequence();
        other.sort();
        prop_assert_eq!(sorted, other);
    }

    #[test]
    fn isolation_is_additive_over_components((a, b) in (arb_graph(6), arb_graph(6))) {
        let g = a.disjoint_union(&b).unwrap();
        for fam in families() {
            prop_assert_eq!(solve(&g, &fam).iota, solve(&a, &fam).iota + solve(&b, &fam).iota);
        }
    }
}

#[test]
fn graph6_round_trip_random_sizes() {
    let mut rng = common::rng(11);
    for i in 0..2_000 {
        let n = 1 + i % 62;
        let g = common::random_graph(&mut rng, n, 0.3);
        let text = to_graph6_string(&g).unwrap();
        assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g, "{text}");
    }
}
