use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ordmatch::detect::{alternating_path_witness, max_pattern_matching, max_split_pattern, Groups, Inner};
use ordmatch::harness::{self, RowStatus, Target};
use ordmatch::ramsey::{find_ramsey, RamseyOptions};
use ordmatch::render::{render_arc, render_dot};
use ordmatch::search::{exact_turan, SearchOptions};
use ordmatch::{Error, OrderedGraph, PatternKind, PatternSpec};
use serde_json::json;

const EXIT_MISMATCH: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(name = "ordmatch", version, about = "Turán and Ramsey numbers of ordered matchings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input graph (JSON); stdin when omitted
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for search and Ramsey commands
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for search and Ramsey commands
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Largest copy of a pattern in the input graph, with a witness
    Detect {
        /// e.g. cross, nonsep, snn, mstar, altpath; all kinds when omitted
        #[arg(long)]
        pattern: Option<PatternKind>,
        /// Stop once a copy of this size is found
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exact extremal number by exhaustive search
    Turan {
        /// Comma-separated patterns, e.g. cross:2,sep:2
        #[arg(long, value_delimiter = ',', required = true)]
        forbid: Vec<PatternSpec>,
        #[arg(short)]
        n: usize,
        /// Only search interval-closed graphs (non-separated patterns only)
        #[arg(long)]
        shift_prune: bool,
        /// An edge count known to be attainable
        #[arg(long)]
        seed_lower: Option<u64>,
        /// Search ceiling on n
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Generate a construction; writes the graph and a sidecar summary
    Construct {
        /// SEPARATED, NESTED_ALT, NON_SEPARATED, CROSS_SEP, NEST_SEP, NEST_CROSS_SEP,
        /// APEX_CHAIN[:word], HUB_LONG or MSTAR
        #[arg(long)]
        family: Target,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    /// Ordered Ramsey number of an alternating path or a non-nested matching
    Ramsey {
        #[arg(long)]
        target: PatternSpec,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Closed forms against exhaustive search, as TSV
    Table {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Regenerate a construction and check its count and freeness
    Verify {
        #[arg(long)]
        family: Target,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    /// Detectors against the brute-force oracle on seeded random graphs
    Oracle {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 11)]
        max_n: usize,
    },
    /// Draw the input graph
    Render {
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Dot,
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn read_graph(global: &Global) -> anyhow::Result<OrderedGraph> {
    let text = match &global.input {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => std::io::read_to_string(std::io::stdin()).context("reading stdin")?,
    };
    Ok(OrderedGraph::from_json(&text)?)
}

fn search_options(global: &Global) -> SearchOptions {
    let mut opts = SearchOptions::default();
    if let Some(t) = global.threads {
        opts.workers = t;
    }
    if let Some(b) = global.budget {
        opts.budget = b;
    }
    opts
}

fn detect_one(g: &OrderedGraph, kind: PatternKind, cap: Option<usize>) -> anyhow::Result<serde_json::Value> {
    Ok(match kind {
        PatternKind::AltPath => {
            let (t, w) = alternating_path_witness(g);
            json!({"pattern": kind.name(), "size": t, "witness": w})
        }
        PatternKind::MStar | PatternKind::MStarStar => {
            let inner = if kind == PatternKind::MStar { Inner::Cross } else { Inner::Nest };
            let (size, w) = max_split_pattern(g, inner, Groups::Two);
            json!({"pattern": kind.name(), "size": size, "witness": w})
        }
        _ => {
            let (size, w) = max_pattern_matching(g, kind, cap)?;
            json!({"pattern": kind.name(), "size": size, "witness": w})
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let global = &cli.global;
    match cli.command {
        Command::Detect { pattern, cap } => {
            let g = read_graph(global)?;
            let kinds = pattern.map_or(PatternKind::ALL.to_vec(), |k| vec![k]);
            let results = kinds.into_iter().map(|k| detect_one(&g, k, cap)).collect::<anyhow::Result<Vec<_>>>()?;
            let value = if results.len() == 1 { results[0].clone() } else { json!(results) };
            Ok(Outcome::ok(serde_json::to_string(&value)?))
        }
        Command::Turan { forbid, n, shift_prune, seed_lower, max_n } => {
            let opts = SearchOptions {
                use_shift_pruning: shift_prune,
                seed_lower_bound: seed_lower,
                max_n,
                ..search_options(global)
            };
            let report = exact_turan(n, &forbid, &opts)?;
            let code = if report.exact { 0 } else { EXIT_BUDGET };
            Ok(Outcome { text: serde_json::to_string(&report)?, code })
        }
        Command::Construct { family, n, k } => {
            let g = family.build(n, k)?;
            let claimed = family.claimed_count(n, k).ok();
            let verification = harness::verify_construction(&family, n, k).ok();
            let sidecar = json!({
                "family": family.to_string(),
                "claimed_count": claimed,
                "verified": verification.as_ref().is_some_and(|v| v.ok()),
            });
            match &global.out {
                Some(path) => {
                    let mut side = path.clone().into_os_string();
                    side.push(".sidecar.json");
                    fs::write(&side, serde_json::to_string_pretty(&sidecar)?)
                        .with_context(|| format!("writing {}", PathBuf::from(&side).display()))?;
                    Ok(Outcome::ok(g.to_json()))
                }
                None => Ok(Outcome::ok(format!("{}\n{}", g.to_json(), sidecar))),
            }
        }
        Command::Ramsey { target, nmax } => {
            let mut opts = RamseyOptions::default();
            if let Some(t) = global.threads {
                opts.workers = t;
            }
            if let Some(b) = global.budget {
                opts.budget = b;
            }
            let report = find_ramsey(target, nmax, &opts)?;
            let code = if report.budget_exhausted { EXIT_BUDGET } else { 0 };
            Ok(Outcome { text: serde_json::to_string(&report)?, code })
        }
        Command::Table { max_n, max_k } => {
            let opts = SearchOptions { max_n: max_n.max(9), ..search_options(global) };
            let rows = harness::run_table(max_n, max_k, &opts)?;
            let code = if rows.iter().any(|r| r.status == RowStatus::Mismatch) {
                EXIT_MISMATCH
            } else if rows.iter().any(|r| r.status == RowStatus::Unresolved) {
                EXIT_BUDGET
            } else {
                0
            };
            Ok(Outcome { text: harness::table_tsv(&rows), code })
        }
        Command::Verify { family, n, k } => {
            let v = harness::verify_construction(&family, n, k)?;
            let code = if v.ok() { 0 } else { EXIT_MISMATCH };
            Ok(Outcome { text: v.to_string(), code })
        }
        Command::Oracle { count, max_n } => {
            let bad = harness::oracle_check(count, max_n, global.seed)?;
            let mut text = format!("checked {count} graphs (seed {}), {} disagreements", global.seed, bad.len());
            for d in &bad {
                text.push('\n');
                text.push_str(&d.to_string());
            }
            Ok(Outcome { text, code: if bad.is_empty() { 0 } else { EXIT_MISMATCH } })
        }
        Command::Render { format } => {
            let g = read_graph(global)?;
            Ok(Outcome::ok(match format {
                Format::Svg => render_arc(&g),
                Format::Dot => render_dot(&g),
            }))
        }
    }
}

fn emit(global_out: Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    use std::io::Write;
    match global_out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let sep = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{sep}").and_then(|()| stdout.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.context("writing stdout"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(outcome) => match emit(out, &outcome.text) {
            Ok(()) => ExitCode::from(outcome.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded(_)) => EXIT_BUDGET,
                Some(_) => EXIT_USAGE,
                None => 1,
            };
            ExitCode::from(code)
        }
    }
}
