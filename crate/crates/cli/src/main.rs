use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use isolation_core::{
    enumerate_f_plus_e, enumerate_graphs, enumerate_pure_special, enumerate_special, ingest_graph6,
    parse_graph6, solve, to_graph6_string, verify_bound, verify_extremal, verify_lemma_suites,
    verify_special_corpus, verify_two_copies, CorpusConfig, EnumSpec, Family, Graph, LemmaConfig,
    Pattern, Recognizer, RunOptions,
};

const SEED_ENV: &str = "ISOLATION_LAB_SEED";

/// Exact F-isolation numbers, extremal constructions and verification runs.
#[derive(Debug, Parser)]
#[command(name = "isolation-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the isolation number and a minimum witness of each input graph.
    Solve {
        /// Pattern: a name (k1_3, paw, p3, k3, c5, ...), a graph6 string, or
        /// `cycles` for the family of all cycles. Repeat for a family.
        #[arg(short = 'F', long = "pattern", required = true)]
        patterns: Vec<String>,
        /// A graph6 string, or `-` to read one graph per line from stdin.
        #[arg(default_value = "-")]
        graph: String,
    },
    /// Generate extremal graphs as graph6 lines.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print the extremal class of each input graph.
    Recognize {
        #[arg(short = 'F', long = "pattern")]
        pattern: String,
        /// graph6 file, or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Enumerate graphs up to isomorphism as graph6 lines.
    Enum {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 0)]
        m_min: usize,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        connected: bool,
    },
    /// Run a verification suite; exits 1 if it finds a violation.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// All (m,F)-special graphs up to isomorphism.
    Special {
        #[arg(short = 'F', long = "pattern")]
        pattern: String,
        #[arg(short = 'm', long)]
        m: usize,
        /// Only pure special graphs; m + 1 must be divisible by k + 2.
        #[arg(long)]
        pure: bool,
        /// Write one JSON layout per generated graph to this file.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// All graphs F + e for a non-edge e of F, up to isomorphism.
    Fplus {
        #[arg(short = 'F', long = "pattern")]
        pattern: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bound,
    Extremal,
    TwoCopies,
    Lemmas,
    Special,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    suite: Suite,
    /// Pattern under test; `lemmas` ignores it.
    #[arg(short = 'F', long = "pattern")]
    pattern: Option<String>,
    /// Universe: connected graphs up to this order. For `lemmas`, the largest
    /// random host order.
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Read the universe as graph6 from this file (`-` for stdin) instead of
    /// enumerating it.
    #[arg(long, conflicts_with = "n_max")]
    input: Option<String>,
    /// Write per-graph records as JSONL.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the summary JSON here instead of stdout.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Seed for randomized suites; ISOLATION_LAB_SEED takes precedence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Trials per randomized lemma suite.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest number of constituents in the special corpus.
    #[arg(long, default_value_t = 3)]
    q_max: usize,
    /// Random gluings per gluing suite.
    #[arg(long, default_value_t = 200)]
    gluing_trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_pattern(spec: &str) -> Result<Pattern> {
    Pattern::parse(spec).map_err(|e| anyhow!("pattern {spec:?}: {e}"))
}

fn parse_family(specs: &[String]) -> Result<Family> {
    if specs.iter().any(|s| s == "cycles") {
        if specs.len() > 1 {
            bail!("`cycles` cannot be combined with other patterns");
        }
        return Ok(Family::AllCycles);
    }
    let patterns = specs
        .iter()
        .map(|s| parse_pattern(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Family::patterns(patterns)?)
}

fn required_pattern(args: &VerifyArgs) -> Result<Pattern> {
    match &args.pattern {
        Some(spec) => parse_pattern(spec),
        None => bail!("--pattern is required for this suite"),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let file = File::open(path).with_context(|| format!("opening {path}"))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn read_graphs(path: &str) -> Result<Vec<Graph>> {
    ingest_graph6(open_input(path)?)
        .map(|item| item.map(|(_, g)| g).map_err(|e| anyhow!("{path}: {e}")))
        .collect()
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match cli.command {
        Command::Solve { patterns, graph } => {
            let fam = parse_family(&patterns)?;
            let graphs = if graph == "-" {
                read_graphs("-")?
            } else {
                vec![parse_graph6(graph.as_bytes()).map_err(|e| anyhow!("graph {graph:?}: {e}"))?]
            };
            for g in &graphs {
                let r = solve(g, &fam);
                writeln!(out, "iota={} witness={}", r.iota, r.witness)?;
            }
            true
        }
        Command::Gen(GenCommand::Special {
            pattern,
            m,
            pure,
            layout,
        }) => {
            let p = parse_pattern(&pattern)?;
            let built = if pure {
                enumerate_pure_special(&p, m)
            } else {
                enumerate_special(&p, m)
            }?;
            let mut sidecar = layout.as_ref().map(create).transpose()?;
            for s in &built {
                writeln!(out, "{}", to_graph6_string(&s.graph)?)?;
                if let Some(w) = sidecar.as_mut() {
                    writeln!(w, "{}", serde_json::to_string(&s.layout)?)?;
                }
            }
            if let Some(mut w) = sidecar {
                w.flush()?;
            }
            true
        }
        Command::Gen(GenCommand::Fplus { pattern }) => {
            let p = parse_pattern(&pattern)?;
            for g in enumerate_f_plus_e(&p) {
                writeln!(out, "{}", to_graph6_string(&g)?)?;
            }
            true
        }
        Command::Recognize { pattern, input } => {
            let p = parse_pattern(&pattern)?;
            let graphs = read_graphs(&input)?;
            let max_n = graphs.iter().map(Graph::n).max().unwrap_or(0);
            let recognizer = Recognizer::new(&p, max_n);
            for g in &graphs {
                writeln!(out, "{}\t{}", to_graph6_string(g)?, recognizer.classify(g))?;
            }
            true
        }
        Command::Enum {
            n_max,
            n_min,
            m_min,
            m_max,
            connected,
        } => {
            let spec = EnumSpec {
                n_min,
                n_max,
                m_min,
                m_max,
                connected_only: connected,
            };
            for g in enumerate_graphs(&spec)? {
                writeln!(out, "{}", to_graph6_string(&g)?)?;
            }
            true
        }
        Command::Verify(args) => verify(args, &mut out)?,
    };
    out.flush()?;
    Ok(ok)
}

fn seed(args: &VerifyArgs) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| anyhow!("{SEED_ENV}={v:?}: {e}")),
        Err(_) => Ok(args.seed),
    }
}

fn emit_summary(args: &VerifyArgs, summary: &str, out: &mut impl Write) -> Result<()> {
    match &args.summary {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "{summary}")?;
            w.flush()?;
        }
        None => writeln!(out, "{summary}")?,
    }
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> Result<bool> {
    let seed = seed(&args)?;
    match args.suite {
        Suite::Lemmas => {
            let report = verify_lemma_suites(&LemmaConfig {
                seed,
                trials: args.trials,
                n_max: args.n_max.unwrap_or(LemmaConfig::default().n_max),
            });
            emit_summary(&args, &report.summary_json(), out)?;
            Ok(report.passed())
        }
        Suite::Special => {
            let p = required_pattern(&args)?;
            let report = verify_special_corpus(
                &p,
                &CorpusConfig {
                    q_max: args.q_max,
                    seed,
                    gluing_trials: args.gluing_trials,
                },
            )?;
            emit_summary(&args, &report.summary_json(), out)?;
            Ok(report.passed())
        }
        Suite::Bound | Suite::Extremal | Suite::TwoCopies => {
            let p = required_pattern(&args)?;
            let (mut universe, mut label) = match (&args.input, args.n_max) {
                (Some(path), _) => (read_graphs(path)?, format!("input {path}")),
                (None, Some(n_max)) => {
                    let spec = EnumSpec {
                        m_max: args.m_max,
                        ..EnumSpec::connected_up_to(n_max)
                    };
                    let graphs = enumerate_graphs(&spec)?.collect();
                    (graphs, format!("connected n<={n_max}"))
                }
                (None, None) => bail!("one of --n-max or --input is required"),
            };
            if let Some(m_max) = args.m_max {
                universe.retain(|g| g.m() <= m_max);
                label.push_str(&format!(" m<={m_max}"));
            }
            let opts = RunOptions {
                workers: args
                    .workers
                    .unwrap_or_else(|| RunOptions::default().workers),
            };
            let report = match args.suite {
                Suite::Bound => verify_bound(&p, &universe, &label, &opts),
                Suite::Extremal => verify_extremal(&p, &universe, &label, &opts),
                _ => verify_two_copies(&p, &universe, &label, &opts),
            }?;
            if let Some(path) = &args.report {
                let mut w = create(path)?;
                w.write_all(report.records_jsonl().as_bytes())?;
                w.flush()?;
            }
            emit_summary(&args, &report.summary_json(), out)?;
            Ok(report.passed())
        }
    }
}
