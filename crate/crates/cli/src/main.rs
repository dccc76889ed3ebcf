//! `closedrees` command-line tool.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success; for `verify`/`catalog`, no discrepancies and nothing cut off |
//! | 1 | unreadable or malformed input, bad flags or configuration |
//! | 2 | graph has no closed labeling (`analyze` still prints a bounds-only report) |
//! | 3 | a scale or Gröbner-basis budget limit was hit |
//! | 4 | at least one discrepancy between closed forms and the oracle |
//! | 5 | internal arithmetic failure |
//!
//! When several apply, the first of 1, 2, 4, 3 wins.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use closedrees::catalog::{catalog_graphs, check_graph, CatalogCheck, CatalogEntry, CatalogSummary};
use closedrees::graph::{parse_graph, Graph};
use closedrees::report::{analyze, crosscheck, Analysis};
use closedrees::{Error, FieldChoice, RunConfig};
use rayon::prelude::*;
use serde::Serialize;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NOT_CLOSED: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_DISCREPANCY: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

/// Environment variable holding the catalog worker count.
const WORKERS_ENV: &str = "CLOSEDREES_WORKERS";

#[derive(Parser)]
#[command(name = "closedrees", version, about = "Rees algebra and fiber invariants of binomial edge ideals of closed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariant report for one graph.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Compare the closed forms against Gröbner-basis computations.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run checks on every identity-closed graph on [n].
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all", value_parser = parse_check)]
        check: CatalogCheck,
        #[command(flatten)]
        opts: Opts,
        /// Worker threads; 0 means one per core.
        #[arg(long, env = WORKERS_ENV, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long, default_value_t = 3)]
    smax: u32,
    #[arg(long = "degree-bound", default_value_t = 4)]
    degree_bound: u32,
    /// `rationals` or `prime:2147483647` (adds a screening pass).
    #[arg(long, default_value = "rationals", value_parser = parse_field)]
    field: FieldChoice,
    /// Reduction-step budget per Gröbner basis.
    #[arg(long = "gb-budget")]
    gb_budget: Option<u64>,
    /// Write JSON here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_check(s: &str) -> Result<CatalogCheck, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Opts {
    fn config(&self, workers: usize) -> RunConfig {
        let mut cfg = RunConfig {
            degree_bound: self.degree_bound,
            smax: self.smax,
            field: self.field,
            workers,
            output: self.output.clone(),
            ..RunConfig::default()
        };
        if let Some(b) = self.gb_budget {
            cfg.gb_step_budget = b;
        }
        cfg
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidGraph(_) | Error::InvalidLabeling(_) | Error::IsolatedVertex(_) | Error::Config(_) => {
            EXIT_INPUT
        }
        Error::NotClosed(_) => EXIT_NOT_CLOSED,
        e if e.is_resource() => EXIT_RESOURCE,
        _ => EXIT_INTERNAL,
    }
}

/// Edge list, or a JSON object `{"n": .., "edges": [[i, j], ..]}`.
fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        parse_graph(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn sink(output: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match output {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: Serialize>(value: &T, output: &Option<PathBuf>) -> io::Result<()> {
    let mut w = sink(output)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()
}

fn cmd_analyze(file: &Path, opts: &Opts) -> Result<u8, (u8, String)> {
    let g = read_graph(file).map_err(|e| (EXIT_INPUT, e))?;
    let cfg = opts.config(1);
    cfg.validate().map_err(|e| (EXIT_INPUT, e.to_string()))?;
    let analysis = analyze(&g, &cfg).map_err(|e| (exit_for(&e), e.to_string()))?;
    emit(&analysis, &opts.output).map_err(|e| (EXIT_INPUT, e.to_string()))?;
    Ok(match analysis {
        Analysis::Closed { .. } => EXIT_OK,
        Analysis::NotClosed { certificate, .. } => {
            eprintln!("not closed: {certificate}");
            EXIT_NOT_CLOSED
        }
    })
}

fn cmd_verify(file: &Path, opts: &Opts) -> Result<u8, (u8, String)> {
    let g = read_graph(file).map_err(|e| (EXIT_INPUT, e))?;
    let cfg = opts.config(1);
    cfg.validate().map_err(|e| (EXIT_INPUT, e.to_string()))?;
    let x = crosscheck(&g, &cfg).map_err(|e| (exit_for(&e), e.to_string()))?;
    emit(&x, &opts.output).map_err(|e| (EXIT_INPUT, e.to_string()))?;
    for d in &x.discrepancies {
        eprintln!("discrepancy: {} expected {} observed {} [{}]", d.invariant, d.expected, d.observed, d.source);
    }
    for i in &x.incomplete {
        eprintln!("incomplete: {i}");
    }
    Ok(if !x.discrepancies.is_empty() {
        EXIT_DISCREPANCY
    } else if !x.incomplete.is_empty() {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a CatalogSummary,
}

fn write_catalog(entries: &[CatalogEntry], summary: &CatalogSummary, output: &Option<PathBuf>) -> io::Result<()> {
    let mut w = sink(output)?;
    for e in entries {
        serde_json::to_writer(&mut w, e)?;
        writeln!(w)?;
    }
    serde_json::to_writer(&mut w, &SummaryLine { summary })?;
    writeln!(w)?;
    w.flush()
}

fn cmd_catalog(n: usize, check: CatalogCheck, opts: &Opts, workers: usize) -> Result<u8, (u8, String)> {
    let cfg = opts.config(workers);
    cfg.validate().map_err(|e| (EXIT_INPUT, e.to_string()))?;
    let graphs = catalog_graphs(n, check).map_err(|e| (exit_for(&e), e.to_string()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    // collect keeps encoding order regardless of scheduling
    let entries = pool
        .install(|| graphs.par_iter().map(|g| check_graph(g, check, &cfg)).collect::<Result<Vec<_>, _>>())
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let summary = CatalogSummary::from_entries(n, check, &entries);
    write_catalog(&entries, &summary, &opts.output).map_err(|e| (EXIT_INPUT, e.to_string()))?;

    eprintln!("n={n} check={check:?}: graphs {}, verified {}, discrepancies {}, incomplete {}",
        summary.graphs, summary.verified, summary.discrepancies, summary.incomplete);
    for (name, count) in &summary.failing_invariants {
        eprintln!("  {name}: {count} graph(s)");
    }
    if let Some(m) = summary.max_reltype {
        eprintln!("  max reltype {m}");
    }
    Ok(if summary.discrepancies > 0 {
        EXIT_DISCREPANCY
    } else if summary.incomplete > 0 {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let result = match &cli.command {
        Command::Analyze { file, opts } => cmd_analyze(file, opts),
        Command::Verify { file, opts } => cmd_verify(file, opts),
        Command::Catalog { n, check, opts, workers } => cmd_catalog(*n, *check, opts, *workers),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
