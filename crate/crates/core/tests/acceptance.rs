//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use isolation_core::{
    enumerate_graphs, is_isolating, is_isomorphic, named, parse_graph6, solve, solve_oracle,
    to_graph6_string, verify_bound, verify_extremal, verify_special_corpus, verify_two_copies,
    CorpusConfig, EnumSpec, ExtremalClass, Family, Graph, Pattern, RunOptions, SuiteReport,
    TheoremReport,
};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn universe(n_max: usize) -> Vec<Graph> {
    enumerate_graphs(&EnumSpec::connected_up_to(n_max))
        .unwrap()
        .collect()
}

fn pattern(name: &str) -> Pattern {
    Pattern::parse(name).unwrap()
}

fn theorem_detail(r: &TheoremReport) -> String {
    let c = &r.counts;
    let mut s = format!(
        "checked={} exempt={} equality={} violations={} misclassified={} counterexamples={}",
        c.checked,
        c.exempt,
        c.equality_cases,
        c.bound_violations,
        c.equality_misclassified,
        c.counterexamples
    );
    if let Some(first) = r.offending.first() {
        s.push_str(&format!(" first_offender={first}"));
    }
    s
}

fn suite_detail(r: &SuiteReport, names: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let res = r.result(name).expect("suite present");
        ok &= res.failures == 0 && res.trials > 0;
        parts.push(format!(
            "{}:{}/{}",
            name,
            res.trials - res.failures,
            res.trials
        ));
        if let Some(f) = &res.first_failure {
            parts.push(format!("first_failure=({f})"));
        }
    }
    (
        ok,
        format!("{} {}", r.pattern.as_deref().unwrap_or(""), parts.join(" ")),
    )
}

fn bound_for_star(u8: &[Graph], opts: &RunOptions) -> Outcome {
    let r = verify_bound(&pattern("k1_3"), u8, "connected n<=8", opts).unwrap();
    Outcome::new(r.passed() && r.counts.checked > 0, theorem_detail(&r))
}

fn extremal_for_star(u8: &[Graph], opts: &RunOptions) -> Outcome {
    let r = verify_extremal(&pattern("k1_3"), u8, "connected n<=8", opts).unwrap();
    Outcome::new(
        r.passed() && r.counts.equality_cases > 0,
        theorem_detail(&r),
    )
}

fn extremal_for_paw(opts: &RunOptions) -> Outcome {
    let r = verify_extremal(&pattern("paw"), &universe(7), "connected n<=7", opts).unwrap();
    Outcome::new(
        r.passed() && r.counts.equality_cases > 0,
        theorem_detail(&r),
    )
}

fn triangle_equality_cases(u8: &[Graph], opts: &RunOptions) -> Outcome {
    let r = verify_extremal(&pattern("k3"), u8, "connected n<=8", opts).unwrap();
    let equality: Vec<_> = r
        .records
        .iter()
        .filter(|rec| rec.class != ExtremalClass::SpecialPairException && rec.iota * 5 == rec.m + 1)
        .collect();
    let all_pure = equality
        .iter()
        .all(|rec| rec.class == ExtremalClass::PureSpecial);
    let no_f_plus_e = r
        .records
        .iter()
        .all(|rec| rec.class != ExtremalClass::FPlusE);
    Outcome::new(
        r.passed() && all_pure && no_f_plus_e && !equality.is_empty(),
        format!(
            "{} pure_equality={}/{}",
            theorem_detail(&r),
            equality.len(),
            r.counts.equality_cases
        ),
    )
}

fn corpus_reports() -> Vec<SuiteReport> {
    let cfg = CorpusConfig {
        q_max: 3,
        seed: 20_240_601,
        gluing_trials: 200,
    };
    ["k3", "k1_3", "paw"]
        .iter()
        .map(|p| verify_special_corpus(&pattern(p), &cfg).unwrap())
        .collect()
}

fn corpus_outcome(reports: &[SuiteReport], names: &[&str]) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for r in reports {
        let (good, d) = suite_detail(r, names);
        ok &= good;
        details.push(d);
    }
    Outcome::new(ok, details.join("; "))
}

fn two_copies(u8: &[Graph], opts: &RunOptions) -> Outcome {
    let r = verify_two_copies(&pattern("k1_3"), u8, "connected n<=8", opts).unwrap();
    Outcome::new(r.passed() && r.counts.checked > 0, theorem_detail(&r))
}

fn classical_bounds() -> Outcome {
    let u7 = universe(7);
    let k1 = Family::single(pattern("k1"));
    let k2 = Family::single(pattern("k2"));
    let cycles = Family::AllCycles;
    let mut failures = Vec::new();
    for g in &u7 {
        let n = g.n();
        let gamma = solve(g, &k1).iota;
        if 2 * gamma > n && n != 1 {
            failures.push(format!("gamma {}", to_graph6_string(g).unwrap()));
        }
        let edge = solve(g, &k2).iota;
        let edge_exempt =
            is_isomorphic(g, &named::complete(2)) || is_isomorphic(g, &named::cycle(5));
        if 3 * edge > n && !edge_exempt {
            failures.push(format!("k2 {}", to_graph6_string(g).unwrap()));
        }
        let cyc = solve(g, &cycles).iota;
        if 4 * cyc > n && !is_isomorphic(g, &named::complete(3)) {
            failures.push(format!("cycles {}", to_graph6_string(g).unwrap()));
        }
    }
    let c5 = solve(&named::cycle(5), &k2).iota;
    if c5 != 2 {
        failures.push(format!("iota(C5, K2) = {c5}"));
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "graphs={} iota(C5,K2)={c5} failures={:?}",
            u7.len(),
            failures
        ),
    )
}

fn solver_vs_oracle() -> Outcome {
    let u6 = universe(6);
    let mut fams: Vec<(String, Family)> = ["k2", "k3", "p3", "k1_3"]
        .iter()
        .map(|s| (s.to_string(), Family::single(pattern(s))))
        .collect();
    fams.push(("cycles".into(), Family::AllCycles));
    let mut compared = 0;
    let mut failures = Vec::new();
    for (name, fam) in &fams {
        for g in &u6 {
            let fast = solve(g, fam);
            let slow = solve_oracle(g, fam);
            compared += 1;
            let ok = fast.iota == slow.iota
                && fast.witness.len() == fast.iota
                && slow.witness.len() == slow.iota
                && is_isolating(g, fam, fast.witness)
                && is_isolating(g, fam, slow.witness);
            if !ok {
                failures.push(format!("{name} {}", to_graph6_string(g).unwrap()));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("comparisons={compared} failures={failures:?}"),
    )
}

fn infrastructure() -> Outcome {
    let mut rng = common::rng(10_000);
    let mut round_trip_failures = 0;
    for i in 0..10_000 {
        let n = 1 + i % 62;
        let p = [0.1, 0.3, 0.5, 0.8][i % 4];
        let g = common::random_graph(&mut rng, n, p);
        let text = to_graph6_string(&g).unwrap();
        if parse_graph6(text.as_bytes()).as_ref() != Ok(&g) {
            round_trip_failures += 1;
        }
    }

    let mut count_mismatches = Vec::new();
    for n in 1..=6 {
        for connected_only in [false, true] {
            let ours = enumerate_graphs(&EnumSpec {
                n_min: n,
                n_max: n,
                m_min: 0,
                m_max: None,
                connected_only,
            })
            .unwrap()
            .count();
            let oracle = common::labeled_class_count(n, connected_only);
            if ours != oracle {
                count_mismatches.push((n, connected_only, ours, oracle));
            }
        }
    }

    let u7 = universe(7);
    let star = pattern("k1_3");
    let renders = |workers: usize| {
        let opts = RunOptions { workers };
        let b = verify_bound(&star, &u7, "connected n<=7", &opts).unwrap();
        let e = verify_extremal(&star, &u7, "connected n<=7", &opts).unwrap();
        (
            b.records_jsonl(),
            b.summary_json(),
            e.records_jsonl(),
            e.summary_json(),
        )
    };
    let base = renders(1);
    let identical = [2, 3, 8].iter().all(|&w| renders(w) == base);

    Outcome::new(
        round_trip_failures == 0 && count_mismatches.is_empty() && identical,
        format!(
            "round_trip_failures={round_trip_failures}/10000 count_mismatches={count_mismatches:?} \
             reports_identical_across_workers={identical}"
        ),
    )
}

type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

fn main() -> ExitCode {
    let opts = RunOptions::default();
    let started = Instant::now();
    let u8 = universe(8);
    println!("universe: {} connected graphs with n <= 8", u8.len());
    let corpus = corpus_reports();

    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "K1,3 bound over connected n<=8",
            Box::new(|| bound_for_star(&u8, &opts)),
        ),
        (
            "K1,3 equality cases are exactly the extremal classes, n<=8",
            Box::new(|| extremal_for_star(&u8, &opts)),
        ),
        (
            "paw equality cases are exactly the extremal classes, n<=7",
            Box::new(|| extremal_for_paw(&opts)),
        ),
        (
            "K3 equality cases are pure special and never F+e, n<=8",
            Box::new(|| triangle_equality_cases(&u8, &opts)),
        ),
        (
            "pure special graphs attain the bound, q<=3",
            Box::new(|| corpus_outcome(&corpus, &["equality", "recognition"])),
        ),
        (
            "forced vertex and vertex deletion on the special corpus",
            Box::new(|| corpus_outcome(&corpus, &["forced-vertex", "vertex-deletion"])),
        ),
        (
            "K1,3 two disjoint copies with m=2k+3, n<=8",
            Box::new(|| two_copies(&u8, &opts)),
        ),
        (
            "classical bounds over connected n<=7",
            Box::new(classical_bounds),
        ),
        (
            "solver agrees with subset oracle, n<=6",
            Box::new(solver_vs_oracle),
        ),
        (
            "graph6 round trip, enumeration counts, worker determinism",
            Box::new(infrastructure),
        ),
    ];

    let mut all = true;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "criterion {:>2}: {} | {} | {} | {:.1}s",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance total {:.1}s", started.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
