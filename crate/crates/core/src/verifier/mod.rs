//! Exhaustive and randomized checks of the isolation bound and of the graphs
//! that attain it.
//!
//! Violations are recorded in reports, with offending graphs as graph6 strings.

mod corpus;
mod lemmas;

pub use corpus::{verify_special_corpus, CorpusConfig};
pub use lemmas::{verify_lemma_suites, LemmaConfig};

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::constructions::{
    enumerate_special, ConstructionError, ExtremalClass, Recognizer, Verdict,
};
use crate::graph::Graph;
use crate::graph6::{to_graph6_string, Graph6Error};
use crate::pattern::{enumerate_copies, Pattern};
use crate::solver::{solve, Family};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("pattern {0} has no dominating vertex")]
    NoDominatingVertex(String),
    #[error("pattern {name} has k = {k} edges; this suite needs k >= 3")]
    TooFewEdges { name: String, k: usize },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// One JSONL line per examined graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub g6: String,
    pub m: usize,
    pub iota: usize,
    /// `"{m+1}/{k+2}"`, unreduced.
    pub bound: String,
    pub class: ExtremalClass,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub checked: usize,
    pub exempt: usize,
    pub skipped: usize,
    pub bound_violations: usize,
    pub equality_cases: usize,
    pub equality_misclassified: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub suite: String,
    pub pattern: String,
    pub universe: String,
    pub counts: Counts,
    /// graph6 strings of failing graphs, sorted.
    pub offending: Vec<String>,
    #[serde(skip)]
    pub records: Vec<Record>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.counts.bound_violations == 0
            && self.counts.equality_misclassified == 0
            && self.counts.counterexamples == 0
            && self.offending.is_empty()
    }

    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            #[serde(flatten)]
            report: &'a TheoremReport,
            passed: bool,
        }
        serde_json::to_string_pretty(&Summary {
            report: self,
            passed: self.passed(),
        })
        .expect("report serializes")
    }

    /// Records as JSONL, already sorted by graph6 string.
    pub fn records_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }
}

fn require_dominating(p: &Pattern) -> Result<(), VerifyError> {
    if p.domination_number() == 1 {
        Ok(())
    } else {
        Err(VerifyError::NoDominatingVertex(p.name().to_string()))
    }
}

fn require_k3(p: &Pattern) -> Result<(), VerifyError> {
    require_dominating(p)?;
    if p.edges() >= 3 {
        Ok(())
    } else {
        Err(VerifyError::TooFewEdges {
            name: p.name().to_string(),
            k: p.edges(),
        })
    }
}

/// Order-preserving parallel map on a dedicated pool of `workers` threads.
pub(crate) fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>, VerifyError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

enum Outcome {
    Skipped,
    Exempt(Record),
    Checked {
        record: Record,
        violation: bool,
        equality: bool,
        misclassified: bool,
    },
}

fn assemble(suite: &str, p: &Pattern, universe: &str, outcomes: Vec<Outcome>) -> TheoremReport {
    let mut counts = Counts::default();
    let mut offending = Vec::new();
    let mut records = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Skipped => counts.skipped += 1,
            Outcome::Exempt(r) => {
                counts.exempt += 1;
                records.push(r);
            }
            Outcome::Checked {
                record,
                violation,
                equality,
                misclassified,
            } => {
                counts.checked += 1;
                counts.bound_violations += violation as usize;
                counts.equality_cases += equality as usize;
                counts.equality_misclassified += misclassified as usize;
                if violation || misclassified {
                    offending.push(record.g6.clone());
                }
                records.push(record);
            }
        }
    }
    records.sort_by(|a, b| a.g6.cmp(&b.g6));
    offending.sort();
    TheoremReport {
        suite: suite.to_string(),
        pattern: p.name().to_string(),
        universe: universe.to_string(),
        counts,
        offending,
        records,
    }
}

fn record(g: &Graph, verdict: &Verdict) -> Result<Record, VerifyError> {
    Ok(Record {
        g6: to_graph6_string(g)?,
        m: verdict.m,
        iota: verdict.iota,
        bound: format!("{}/{}", verdict.bound_num, verdict.bound_den),
        class: verdict.class,
    })
}

fn max_order(universe: &[Graph]) -> usize {
    universe.iter().map(Graph::n).max().unwrap_or(0)
}

/// `(k+2)·ι(G,F) <= m+1` for every connected `G` with `(G,F)` not special.
pub fn verify_bound(
    p: &Pattern,
    universe: &[Graph],
    universe_label: &str,
    opts: &RunOptions,
) -> Result<TheoremReport, VerifyError> {
    require_dominating(p)?;
    let recognizer = Recognizer::new(p, max_order(universe));
    let fam = Family::single(p.clone());
    let k = p.edges();
    let outcomes = par_map(
        universe,
        opts.workers,
        |g| -> Result<Outcome, VerifyError> {
            if !g.is_connected() {
                return Ok(Outcome::Skipped);
            }
            let iota = solve(g, &fam).iota;
            let class = recognizer.classify(g);
            let verdict = Verdict::new(g.m(), iota, k, class);
            let rec = record(g, &verdict)?;
            if class == ExtremalClass::SpecialPairException {
                return Ok(Outcome::Exempt(rec));
            }
            Ok(Outcome::Checked {
                violation: !verdict.within_bound(),
                equality: verdict.attains,
                misclassified: false,
                record: rec,
            })
        },
    )?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble("bound", p, universe_label, outcomes))
}

/// For connected non-special `G`: equality in the bound holds iff `G` is a
/// pure special graph or an `F+e` graph.
pub fn verify_extremal(
    p: &Pattern,
    universe: &[Graph],
    universe_label: &str,
    opts: &RunOptions,
) -> Result<TheoremReport, VerifyError> {
    require_k3(p)?;
    let recognizer = Recognizer::new(p, max_order(universe));
    let fam = Family::single(p.clone());
    let k = p.edges();
    let outcomes = par_map(
        universe,
        opts.workers,
        |g| -> Result<Outcome, VerifyError> {
            if !g.is_connected() {
                return Ok(Outcome::Skipped);
            }
            let iota = solve(g, &fam).iota;
            let class = recognizer.classify(g);
            let verdict = Verdict::new(g.m(), iota, k, class);
            let rec = record(g, &verdict)?;
            if class == ExtremalClass::SpecialPairException {
                return Ok(Outcome::Exempt(rec));
            }
            let divisibility_broken =
                class == ExtremalClass::PureSpecial && (g.m() + 1) % (k + 2) != 0;
            Ok(Outcome::Checked {
                violation: !verdict.within_bound(),
                equality: verdict.attains,
                misclassified: verdict.attains != class.is_extremal() || divisibility_broken,
                record: rec,
            })
        },
    )?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble("extremal", p, universe_label, outcomes))
}

/// Connected graphs with `m = 2k+3` containing two vertex-disjoint `F`-copies
/// have `ι = 1` or are `(2k+3, F)`-special.
pub fn verify_two_copies(
    p: &Pattern,
    universe: &[Graph],
    universe_label: &str,
    opts: &RunOptions,
) -> Result<TheoremReport, VerifyError> {
    require_k3(p)?;
    let k = p.edges();
    let m = 2 * k + 3;
    let special: HashSet<_> = enumerate_special(p, m)?
        .iter()
        .map(|s| canonical_form(&s.graph))
        .collect();
    let recognizer = Recognizer::new(p, max_order(universe));
    let fam = Family::single(p.clone());
    let outcomes = par_map(
        universe,
        opts.workers,
        |g| -> Result<Outcome, VerifyError> {
            if !g.is_connected() || g.m() != m {
                return Ok(Outcome::Skipped);
            }
            let copies = enumerate_copies(g, p, usize::MAX);
            let disjoint_pair = copies
                .iter()
                .enumerate()
                .any(|(i, a)| copies[i + 1..].iter().any(|b| !a.intersects(*b)));
            if !disjoint_pair {
                return Ok(Outcome::Skipped);
            }
            let iota = solve(g, &fam).iota;
            let is_special = special.contains(&canonical_form(g));
            let verdict = Verdict::new(g.m(), iota, k, recognizer.classify(g));
            let rec = record(g, &verdict)?;
            Ok(Outcome::Checked {
                violation: false,
                equality: verdict.attains,
                misclassified: !(iota == 1 || is_special),
                record: rec,
            })
        },
    )?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut report = assemble("two-copies", p, universe_label, outcomes);
    report.counts.counterexamples = report.counts.equality_misclassified;
    report.counts.equality_misclassified = 0;
    Ok(report)
}

/// Pass/fail tally for one randomized or corpus-driven property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Description of the first failure, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.to_string(),
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pattern: Option<String>,
    pub seed: Option<u64>,
    pub results: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failures == 0)
    }

    pub fn result(&self, name: &str) -> Option<&SuiteResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            #[serde(flatten)]
            report: &'a SuiteReport,
            passed: bool,
        }
        serde_json::to_string_pretty(&Summary {
            report: self,
            passed: self.passed(),
        })
        .expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_graphs, EnumSpec};
    use crate::graph::named::*;

    fn universe(n: usize) -> Vec<Graph> {
        enumerate_graphs(&EnumSpec::connected_up_to(n))
            .unwrap()
            .collect()
    }

    #[test]
    fn bound_exempts_c6_for_p3() {
        let p3 = Pattern::parse("p3").unwrap();
        let report = verify_bound(
            &p3,
            &[cycle(6), path(5)],
            "fixture",
            &RunOptions { workers: 1 },
        )
        .unwrap();
        assert_eq!(report.counts.exempt, 1);
        assert_eq!(report.counts.checked, 1);
        let c6 = to_graph6_string(&cycle(6)).unwrap();
        let rec = report.records.iter().find(|r| r.g6 == c6).unwrap();
        assert_eq!(rec.iota, 2);
        assert_eq!(rec.class, ExtremalClass::SpecialPairException);
        assert!(report.passed());
    }

    #[test]
    fn bound_exempts_pattern_itself() {
        let k3 = Pattern::parse("k3").unwrap();
        let report = verify_bound(&k3, &[complete(3)], "K3", &RunOptions { workers: 1 }).unwrap();
        assert_eq!((report.counts.exempt, report.counts.checked), (1, 0));
    }

    #[test]
    fn star_bound_and_extremal_small() {
        let s = Pattern::parse("k1_3").unwrap();
        let u = universe(6);
        let opts = RunOptions { workers: 2 };
        let b = verify_bound(&s, &u, "n<=6", &opts).unwrap();
        assert!(b.passed(), "{}", b.summary_json());
        let e = verify_extremal(&s, &u, "n<=6", &opts).unwrap();
        assert!(e.passed(), "{}", e.summary_json());
        assert!(e.counts.equality_cases >= 3);
    }

    #[test]
    fn preconditions() {
        let p4 = Pattern::parse("p4").unwrap();
        assert!(matches!(
            verify_bound(&p4, &[], "", &RunOptions::default()),
            Err(VerifyError::NoDominatingVertex(_))
        ));
        let p3 = Pattern::parse("p3").unwrap();
        assert!(matches!(
            verify_extremal(&p3, &[], "", &RunOptions::default()),
            Err(VerifyError::TooFewEdges { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let s = Pattern::parse("k3").unwrap();
        let u = universe(6);
        let one = verify_extremal(&s, &u, "n<=6", &RunOptions { workers: 1 }).unwrap();
        let four = verify_extremal(&s, &u, "n<=6", &RunOptions { workers: 4 }).unwrap();
        assert_eq!(one.records_jsonl(), four.records_jsonl());
        assert_eq!(one.summary_json(), four.summary_json());
    }
}
