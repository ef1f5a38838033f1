//! Command-line front end. Every command prints one JSON document (or a table with
//! `--pretty`) and maps failures onto the exit-code contract.

mod analyze;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{
    census_query, enumerate_all, enumerate_connected, read_records, run_census_on, CensusOptions,
    Filter,
};
use crate::commutant::CommutantOptions;
use crate::constructions::{
    build_result_one_from, build_result_two_with, locate_result_one_graph, verify_result_one,
    verify_result_two, Constructions, DenseChecks, SFormula,
};
use crate::error::Error;

pub use analyze::{analyze, AnalysisReport, AnalyzeOptions, Timings, ANALYSIS_SCHEMA};
pub use input::{parse_edge_list, read_graph6_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Environment variable naming the directory for relative checkpoint paths.
pub const CHECKPOINT_DIR_ENV: &str = "GLOBALCTL_CHECKPOINT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "globalctl",
    version,
    about = "Symmetry and universality analysis of globally controlled qubit graphs"
)]
pub struct Cli {
    /// Constructions file (named graphs and families) replacing the builtin one.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized primes and generic elements; echoed in every report.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symmetry, commutant and universality report for one graph.
    Analyze(AnalyzeArgs),
    /// Exhaustive census of asymmetric graphs.
    Census(CensusArgs),
    /// Verify the counterexample constructions.
    Verify(VerifyArgs),
    /// Filter the records of a census file.
    Query(QueryArgs),
    /// Search the hidden-symmetry graphs of an n = 7 census for labelings validating S.
    Locate(LocateArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Graph in graph6 format, or the name of a graph in the constructions file.
    pub graph: Option<String>,
    /// Edge-list file instead of a graph6 string.
    #[arg(long, conflicts_with = "graph")]
    pub edges: Option<PathBuf>,
    /// Compute the Lie closure.
    #[arg(long)]
    pub lie: bool,
    /// Compute the invariant subspace decomposition.
    #[arg(long)]
    pub blocks: bool,
    /// Extra generator in PauliSum text format.
    #[arg(long)]
    pub extra: Option<PathBuf>,
    /// Use {H_X, H_ZZ} without H_Z.
    #[arg(long)]
    pub qaoa: bool,
    #[arg(long)]
    pub allow_disconnected: bool,
    /// Largest size for the automatic closure when the commutant is trivial.
    #[arg(long, default_value_t = 4)]
    pub closure_max_qubits: usize,
    /// Include wall-clock timings (non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long = "n")]
    pub n: usize,
    /// Worker threads (0: all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// JSONL checkpoint; relative paths are resolved against $GLOBALCTL_CHECKPOINT_DIR.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long)]
    pub resume: bool,
    /// Read graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Include disconnected graphs.
    #[arg(long)]
    pub all_graphs: bool,
    /// Skip the block decomposition of hits.
    #[arg(long)]
    pub no_blocks: bool,
    #[arg(long)]
    pub timings: bool,
    /// Stop after this many newly analyzed graphs (exit 3; resume later).
    #[arg(long)]
    pub max_new: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormulaArg {
    Literal,
    Symmetric,
}

impl From<FormulaArg> for SFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Literal => SFormula::Literal,
            FormulaArg::Symmetric => SFormula::Symmetric,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["result1", "result2"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub result1: bool,
    #[arg(long)]
    pub result2: bool,
    /// Interior length of Q for --result2.
    #[arg(long = "N", requires = "result2")]
    pub interior: Option<usize>,
    /// Allow interiors below the minimum.
    #[arg(long)]
    pub force: bool,
    /// Skip the matrix-level checks of --result2.
    #[arg(long)]
    pub symbolic_only: bool,
    #[arg(long, value_enum, default_value_t = FormulaArg::Literal)]
    pub formula: FormulaArg,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    pub path: PathBuf,
    /// Clauses like `hidden==true && block_dims==[2,126]`; empty matches all.
    #[arg(default_value = "")]
    pub filter: String,
}

#[derive(Args, Debug)]
pub struct LocateArgs {
    pub census: PathBuf,
    #[arg(long, value_enum, default_value_t = FormulaArg::Literal)]
    pub formula: FormulaArg,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Graph6(_)
        | Error::InvalidGraph(_)
        | Error::InvalidPermutation(_)
        | Error::QubitMismatch { .. }
        | Error::InvalidOperator(_)
        | Error::Parse { .. }
        | Error::Config(_)
        | Error::Io(_) => EXIT_INPUT,
        Error::Budget(_) => EXIT_UNDECIDED,
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::Numerical(_) | Error::Checkpoint { .. } | Error::WorkerPanic(_) => EXIT_INTERNAL,
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    pretty: bool,
}

impl Output<'_> {
    fn emit<T: Serialize>(
        &mut self,
        value: &T,
        table: impl FnOnce(&Value) -> String,
    ) -> std::io::Result<()> {
        let v = serde_json::to_value(value).expect("report serializes");
        if self.pretty {
            write!(self.out, "{}", table(&v))
        } else {
            writeln!(self.out, "{v}")
        }
    }
}

fn kv_table(v: &Value) -> String {
    let mut s = String::new();
    if let Some(obj) = v.as_object() {
        let width = obj.keys().map(String::len).max().unwrap_or(0);
        for (k, x) in obj {
            let shown = match x {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k:<width$}  {shown}\n"));
        }
    }
    s
}

fn checkpoint_path(arg: Option<&Path>, n: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CHECKPOINT_DIR_ENV).map(PathBuf::from);
    match (arg, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(format!("census-n{n}.jsonl"))),
        (None, None) => None,
    }
}

fn load_config(cli: &Cli) -> Result<Constructions, Error> {
    match &cli.config {
        Some(p) => Constructions::load(p),
        None => Ok(Constructions::builtin()),
    }
}

/// Parse `args` and run the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(
                err,
                "{}",
                json!({ "error": e.to_string(), "seed": cli.seed })
            );
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let mut o = Output {
        out,
        pretty: cli.pretty,
    };
    let commutant = CommutantOptions {
        seed: cli.seed,
        ..Default::default()
    };
    match &cli.command {
        Command::Analyze(a) => {
            let config = load_config(cli)?;
            let graph = input::resolve_graph(a.graph.as_deref(), a.edges.as_deref(), &config)?;
            let extra = match &a.extra {
                Some(p) => Some(crate::pauli::PauliSum::from_text(
                    &std::fs::read_to_string(p)?,
                    Some(graph.n()),
                )?),
                None => None,
            };
            let report = analyze(
                &graph,
                extra.as_ref(),
                &AnalyzeOptions {
                    lie: a.lie,
                    blocks: a.blocks,
                    qaoa: a.qaoa,
                    allow_disconnected: a.allow_disconnected,
                    closure_max_qubits: a.closure_max_qubits,
                    timings: a.timings,
                    seed: cli.seed,
                    commutant,
                },
            )?;
            o.emit(&report, kv_table)?;
            Ok(if report.verdict == crate::lie::Verdict::Undecided {
                EXIT_UNDECIDED
            } else {
                EXIT_OK
            })
        }
        Command::Census(c) => {
            let opts = CensusOptions {
                jobs: c.jobs,
                resume: c.resume,
                blocks: !c.no_blocks,
                timings: c.timings,
                max_new: c.max_new,
                connected_only: !c.all_graphs,
                commutant,
                seed: cli.seed,
                ..Default::default()
            };
            let graphs = match &c.input {
                Some(p) => read_graph6_file(p)?,
                None if !(2..=8).contains(&c.n) => {
                    return Err(Error::InvalidGraph(format!(
                        "census supports 2..=8 vertices, got {}",
                        c.n
                    )))
                }
                None if c.all_graphs => enumerate_all(c.n)?,
                None => enumerate_connected(c.n)?,
            };
            let path = checkpoint_path(c.checkpoint.as_deref(), c.n);
            let summary = run_census_on(c.n, &graphs, path.as_deref(), &opts)?;
            let doc = json!({
                "schema": "globalctl.census/1",
                "seed": cli.seed,
                "checkpoint": path.map(|p| p.display().to_string()),
                "summary": summary,
            });
            o.emit(&doc, |v| kv_table(&v["summary"]))?;
            Ok(EXIT_OK)
        }
        Command::Verify(v) => {
            let config = load_config(cli)?;
            if v.result1 {
                let b = build_result_one_from(config.named("H")?, v.formula.into())?;
                let r = verify_result_one(&b)?;
                let passed = r.passed();
                let doc = json!({
                    "schema": "globalctl.verify/1",
                    "seed": cli.seed,
                    "result1": r,
                    "passed": passed,
                });
                o.emit(&doc, |d| {
                    kv_table(&d["result1"]) + &format!("passed  {passed}\n")
                })?;
                Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
            } else {
                let n = v
                    .interior
                    .ok_or_else(|| Error::Config("--result2 needs --N".into()))?;
                let b = build_result_two_with(n, v.force, &config.family.q)?;
                let dense = !v.symbolic_only && b.n() <= 11;
                let r = verify_result_two(
                    &b,
                    DenseChecks {
                        commutant: dense,
                        blocks: dense,
                    },
                )?;
                let passed = r.passed();
                let doc = json!({
                    "schema": "globalctl.verify/1",
                    "seed": cli.seed,
                    "result2": r,
                    "passed": passed,
                });
                o.emit(&doc, |d| {
                    kv_table(&d["result2"]) + &format!("passed  {passed}\n")
                })?;
                Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
            }
        }
        Command::Query(q) => {
            let filter: Filter = q.filter.parse()?;
            let records = census_query(&q.path, &filter)?;
            let doc = json!({
                "schema": "globalctl.query/1",
                "seed": cli.seed,
                "count": records.len(),
                "records": records,
            });
            o.emit(&doc, |d| {
                let mut s = String::new();
                for r in d["records"].as_array().into_iter().flatten() {
                    s.push_str(&format!(
                        "{}  aut={} comm={} hidden={} blocks={}\n",
                        r["graph6"].as_str().unwrap_or(""),
                        r["aut_order"],
                        r["commutant_dim"],
                        r["hidden"],
                        r.get("block_dims").unwrap_or(&Value::Null)
                    ));
                }
                s.push_str(&format!("{} records\n", d["count"]));
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Locate(l) => {
            // validate the file before the search
            read_records(&l.census)?;
            let found = locate_result_one_graph(&l.census, l.formula.into())?;
            let doc = json!({
                "schema": "globalctl.locate/1",
                "seed": cli.seed,
                "formula": SFormula::from(l.formula),
                "count": found.len(),
                "matches": found,
            });
            o.emit(&doc, |d| {
                kv_table(&json!({ "formula": d["formula"], "count": d["count"] }))
            })?;
            Ok(EXIT_OK)
        }
    }
}
