//! `swb`: spectral bounds from walk counts.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use swb_core::corpus::{parse_sweep, CorpusEntry};
use swb_core::sweep::{Corruption, MeasureSelection, SweepConfig};
use swb_core::verify::{failure_report, verify_entry, Check, GraphVerdict, VerifyConfig, VerifySummary};
use swb_core::{Family, Graph, IndexSet, Report};

#[derive(Parser)]
#[command(name = "swb", version, about = "Spectral radius bounds from walk counts and moment problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound on one graph.
    Bounds(BoundsArgs),
    /// Check soundness and invariants over a corpus.
    Verify(VerifyArgs),
    /// Write a CSV of bound values and gaps over graph sweeps.
    Bench(BenchArgs),
    /// Print the edge list of a generated graph.
    Gen(GenArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Highest moment order K.
    #[arg(long = "K", default_value_t = 12)]
    max_order: usize,
    /// Comma-separated measures among walks, closed, vertex.
    #[arg(long, default_value = "walks,closed,vertex")]
    measures: String,
    /// Index set for the Hankel root bound, e.g. 1,2,3 (repeatable).
    #[arg(long = "J")]
    index_sets: Vec<String>,
    /// Largest shift s of the lower bounds.
    #[arg(long, default_value_t = 3)]
    s_max: usize,
    /// Largest step k of the lower and upper bounds.
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    /// Hankel orders of the semidefinite bound, comma-separated.
    #[arg(long, default_value = "0,1,2,3")]
    sdp_orders: String,
    /// Record per-bound wall-clock times (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Seed for random generators given without one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, Failure> {
        let mut cfg = SweepConfig {
            max_order: self.max_order,
            measures: MeasureSelection::parse(&self.measures)?,
            s_max: self.s_max,
            k_max: self.k_max,
            timing: self.timing,
            ..SweepConfig::default()
        };
        if !self.index_sets.is_empty() {
            cfg.index_sets = self
                .index_sets
                .iter()
                .map(|j| j.parse::<IndexSet>())
                .collect::<Result<_, _>>()?;
        }
        cfg.sdp_orders = self
            .sdp_orders
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("malformed sdp order `{t}`"))))
            .collect::<Result<_, _>>()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct BoundsArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    file: Option<PathBuf>,
    /// Generator spec such as star:4 or er:20,0.3,7.
    #[arg(long)]
    gen: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Tolerance of the violation check; bound values are never adjusted.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus specs: families:N, path:A..B, er:N,P,S..T, or a single graph.
    #[arg(default_value = "families:8")]
    corpus: Vec<String>,
    /// Additional edge-list files.
    #[arg(long)]
    file: Vec<PathBuf>,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Sandwich tolerance against rho.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Directory for edge lists and reports of failing graphs.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Test hook: corrupt moment INDEX before bounds are computed.
    #[arg(long, hide = true)]
    corrupt_moment: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Sweep specs: families:N, star:2..10, er:N,P,S..T, ...
    #[arg(required = true)]
    specs: Vec<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec.
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Reasons to exit non-zero, by exit code.
enum Failure {
    /// 1: bad arguments, unreadable or malformed input.
    Usage(String),
    /// 2: a numerical routine failed.
    Numerical(String),
    /// 3: a bound crossed rho or an invariant broke.
    Violation,
}

impl From<swb_core::Error> for Failure {
    fn from(e: swb_core::Error) -> Self {
        match e {
            swb_core::Error::Numerical(_) => Failure::Numerical(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<CorpusEntry, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let graph = Graph::parse_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(CorpusEntry::named(path.display().to_string(), graph))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Failure> {
    let cfg = args.sweep.config()?;
    let entry = match (&args.file, &args.gen) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(spec)) => CorpusEntry::generated(Family::parse_with_seed(spec, args.sweep.seed)?)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let report = Report::build(&entry, &cfg, args.tol)?;
    let text = match args.format {
        Format::Table => output::render_table(&report),
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            output::write_csv(&mut buf, std::slice::from_ref(&report)).map_err(|e| Failure::Usage(e.to_string()))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    emit(args.out.as_deref(), &text)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '_' { c } else { '_' })
        .collect()
}

/// Edge list and report of a failing graph, on stderr or under `dir`.
fn dump_failure(entry: &CorpusEntry, cfg: &VerifyConfig, dir: Option<&Path>) -> Result<(), Failure> {
    let edges = entry.graph.to_edge_list();
    let Some(dir) = dir else {
        eprintln!("# edge list of {} (n = {})", entry.label, entry.graph.n());
        eprint!("{edges}");
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let stem = dir.join(sanitize(&entry.label));
    let path = stem.with_extension("edges");
    fs::write(&path, &edges).map_err(|e| io_failure(&path, e))?;
    // the report itself may be unobtainable when the sweep fails numerically
    if let Ok(report) = failure_report(entry, cfg) {
        let path = stem.with_extension("report.json");
        fs::write(&path, report.to_json()).map_err(|e| io_failure(&path, e))?;
    }
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let mut cfg = VerifyConfig {
        sweep: args.sweep.config()?,
        tol: args.tol,
        ..VerifyConfig::default()
    };
    cfg.sweep.corruption = args.corrupt_moment.map(|index| Corruption::Inflate { index });
    let mut entries = Vec::new();
    for spec in &args.corpus {
        entries.extend(parse_sweep(spec, args.sweep.seed)?);
    }
    for path in &args.file {
        entries.push(read_graph(path)?);
    }
    let verdicts: Vec<GraphVerdict> = entries
        .par_iter()
        .map(|e| verify_entry(e, &cfg))
        .collect::<Result<_, _>>()?;
    let summary = VerifySummary::from_verdicts(&verdicts);

    let mut numerical_only = true;
    for (entry, v) in entries.iter().zip(&verdicts).filter(|(_, v)| !v.passed()) {
        for f in &v.failures {
            numerical_only &= f.check == Check::Numerical;
            eprintln!("FAIL {} {:?}: {}", v.label, f.check, f.detail);
        }
        dump_failure(entry, &cfg, args.out.as_deref())?;
    }
    let margin = summary.worst_margin.map_or("n/a".to_string(), |m| format!("{m:e}"));
    println!(
        "graphs: {}  checks: {}  failed checks: {}  failed graphs: {}  worst margin: {margin}",
        summary.graphs, summary.checks, summary.failed_checks, summary.failed_graphs
    );
    match (summary.passed(), numerical_only) {
        (true, _) => Ok(()),
        (false, true) => Err(Failure::Numerical(format!("{} graph(s) failed numerically", summary.failed_graphs))),
        (false, false) => Err(Failure::Violation),
    }
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let cfg = args.sweep.config()?;
    let mut entries = Vec::new();
    for spec in &args.specs {
        entries.extend(parse_sweep(spec, args.sweep.seed)?);
    }
    // collect keeps input order, so output does not depend on scheduling
    let reports: Vec<Report> = entries
        .par_iter()
        .map(|e| Report::build(e, &cfg, 0.0))
        .collect::<Result<_, _>>()?;
    let mut buf = Vec::new();
    output::write_csv(&mut buf, &reports).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(args.out.as_deref(), std::str::from_utf8(&buf).expect("csv is utf-8"))
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let g = Graph::generate(&Family::parse_with_seed(&args.spec, args.seed)?)?;
    emit(args.out.as_deref(), &g.to_edge_list())
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SWB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("SWB_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    init_threads()?;
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation) => ExitCode::from(3),
    }
}
