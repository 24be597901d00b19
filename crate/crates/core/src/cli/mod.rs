//! Command implementations behind the `collapsible` binary.
//!
//! Each command writes its report to the supplied writer and returns the
//! process exit code. Failures carry their exit code in [`CliError`]:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 1    | `check`: set is not collapsible           |
//! | 2    | graph file does not parse                 |
//! | 3    | unknown vertex label                      |
//! | 4    | `sahr` on a non-chordal graph             |
//! | 5    | exhaustive oracle refused (vertex cap)    |
//! | 6    | separator pair is adjacent or identical   |
//! | 7    | invalid generator or bench configuration  |
//! | 8    | I/O failure                               |

pub mod bench;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::collapse::{self, collapsibility_violations, is_collapsible, Algorithm, CollapseRequest};
use crate::error::Error;
use crate::gen::{GenConfig, Model};
use crate::graph::{Graph, VertexSet};
use crate::io::{parse_edge_list, write_edge_list, ParseOptions};
use crate::separators::{close_separator, enumerate_minimal_separators_capped, DEFAULT_ENUM_CAP};

pub use bench::{BenchConfig, BenchReport, BenchRow, Suite, CSV_HEADER};

/// Environment variable overriding the exhaustive-oracle vertex cap.
pub const ENUM_CAP_VAR: &str = "COLLAPSE_ENUM_CAP";

pub const EXIT_NOT_COLLAPSIBLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNKNOWN_VERTEX: i32 = 3;
pub const EXIT_NOT_CHORDAL: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;
pub const EXIT_ADJACENT: i32 = 6;
pub const EXIT_INVALID_CONFIG: i32 = 7;
pub const EXIT_IO: i32 = 8;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(context: &str, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{context}: {err}"))
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } | Error::SelfLoop(_) | Error::DuplicateEdge(..) => EXIT_PARSE,
            Error::UnknownVertex(_) => EXIT_UNKNOWN_VERTEX,
            Error::NotChordal => EXIT_NOT_CHORDAL,
            Error::TooLarge { .. } => EXIT_TOO_LARGE,
            Error::AdjacentPair(..) | Error::SameVertex(_) => EXIT_ADJACENT,
            Error::InvalidConfig(_) => EXIT_INVALID_CONFIG,
            Error::OverlappingSets | Error::OracleInconsistency(_) => 70,
        };
        Self::new(code, err.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult = Result<i32, CliError>;

#[derive(Debug, Parser)]
#[command(name = "collapsible", version, about = "Minimal collapsible sets of undirected graphical models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the minimal collapsible set containing the targets.
    Collapse(CollapseArgs),
    /// Test whether the graph is collapsible onto a set.
    Check(CheckArgs),
    /// Print a close minimal separator, or all minimal separators.
    Separator(SeparatorArgs),
    /// Write a random graph in edge-list format.
    Gen(GenArgs),
    /// Time the algorithms over a grid of random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge-list file.
    #[arg(long, short = 'g')]
    pub graph: PathBuf,
    /// Drop self-loops and repeated edges instead of rejecting the file.
    #[arg(long)]
    pub dedupe: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Cmsa,
    Sahr,
    Brute,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Cmsa => Algorithm::Cmsa,
            AlgorithmArg::Sahr => Algorithm::Sahr,
            AlgorithmArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Target labels, comma separated.
    #[arg(long, short = 't', value_delimiter = ',', num_args = 0..)]
    pub targets: Vec<String>,
    #[arg(long, short = 'a', value_enum, default_value = "cmsa")]
    pub algorithm: AlgorithmArg,
    #[arg(long, short = 'o', value_enum, default_value = "text")]
    pub output: OutputFormat,
    /// Print every absorption step.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Labels of the set to test, comma separated.
    #[arg(long, short = 's', value_delimiter = ',', num_args = 0..)]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CloseTo {
    X,
    Y,
}

#[derive(Debug, Args)]
pub struct SeparatorArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, short = 'x')]
    pub x: String,
    #[arg(long, short = 'y')]
    pub y: String,
    /// Endpoint whose neighbourhood holds the separator.
    #[arg(long, value_enum, default_value = "x")]
    pub close_to: CloseTo,
    /// List every minimal separator of the pair (small graphs only).
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, short = 'n')]
    pub n: usize,
    #[arg(long, short = 'p', default_value_t = 0.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "decomposable")]
    pub suite: Suite,
    /// Graph sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "250,500,750,1000")]
    pub sizes: Vec<usize>,
    /// Edge probabilities, comma separated.
    #[arg(long = "p", value_delimiter = ',', default_value = "0.01,0.1")]
    pub probabilities: Vec<f64>,
    /// Graphs per grid cell.
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    /// Random targets per graph.
    #[arg(long = "targets", default_value_t = 10)]
    pub targets_per_graph: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: BenchFormat,
}

/// Vertex cap for the exhaustive oracles, from `COLLAPSE_ENUM_CAP`.
pub fn enum_cap() -> Result<usize, CliError> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::new(EXIT_INVALID_CONFIG, format!("{ENUM_CAP_VAR}={raw} is not a vertex count"))
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Collapse(args) => cmd_collapse(&args, out),
        Command::Check(args) => cmd_check(&args, out),
        Command::Separator(args) => cmd_separator(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph, CliError> {
    load_graph_from(&input.graph, input.dedupe)
}

fn load_graph_from(path: &Path, dedupe: bool) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
    parse_edge_list(&text, ParseOptions { dedupe })
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("writing output", e))
}

fn braced(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(" "))
}

/// One absorption step rendered with labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub component_index: usize,
    pub component: Vec<String>,
    pub pair: (String, String),
    pub separator_uv: Vec<String>,
    pub separator_vu: Vec<String>,
    pub absorbed: Vec<String>,
}

/// Outcome of `collapse`; also its JSON output schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub input_path: String,
    pub targets: Vec<String>,
    pub algorithm: Algorithm,
    /// Sorted lexicographically, no repeats.
    pub result: Vec<String>,
    pub trace: Vec<TraceEntry>,
    pub elapsed_seconds: f64,
}

impl RunRecord {
    pub fn render_text(&self, with_trace: bool) -> String {
        let mut text = self.result.join(" ");
        text.push('\n');
        if with_trace {
            for (i, step) in self.trace.iter().enumerate() {
                text.push_str(&format!(
                    "step {}: component {} {} pair ({}, {}) separators {} {} absorbed {}\n",
                    i + 1,
                    step.component_index,
                    braced(&step.component),
                    step.pair.0,
                    step.pair.1,
                    braced(&step.separator_uv),
                    braced(&step.separator_vu),
                    braced(&step.absorbed),
                ));
            }
        }
        text
    }
}

/// Runs one algorithm on a graph and target labels.
pub fn collapse_record(
    g: &Graph,
    input_path: &str,
    targets: &[String],
    algorithm: Algorithm,
    cap: usize,
) -> Result<RunRecord, CliError> {
    let req = CollapseRequest::from_labels(g, targets)?;
    let outcome = collapse::run(algorithm, &req, cap)?;
    let trace = outcome
        .trace
        .iter()
        .map(|step| TraceEntry {
            component_index: step.component_index,
            component: g.sorted_labels(&outcome.components[step.component_index]),
            pair: (g.label(step.pair.0).to_owned(), g.label(step.pair.1).to_owned()),
            separator_uv: g.sorted_labels(&step.separator_uv),
            separator_vu: g.sorted_labels(&step.separator_vu),
            absorbed: g.sorted_labels(&step.absorbed),
        })
        .collect();
    Ok(RunRecord {
        input_path: input_path.to_owned(),
        targets: g.sorted_labels(&req.targets),
        algorithm,
        result: g.sorted_labels(&outcome.result),
        trace,
        elapsed_seconds: outcome.elapsed.as_secs_f64(),
    })
}

pub fn cmd_collapse(args: &CollapseArgs, out: &mut dyn Write) -> CliResult {
    let g = load_graph(&args.input)?;
    let cap = enum_cap()?;
    let record = collapse_record(
        &g,
        &args.input.graph.display().to_string(),
        &args.targets,
        args.algorithm.into(),
        cap,
    )?;
    let text = match args.output {
        OutputFormat::Text => record.render_text(args.trace),
        OutputFormat::Json => {
            let mut record = record;
            if !args.trace {
                record.trace.clear();
            }
            serde_json::to_string_pretty(&record).expect("record serialises") + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(0)
}

/// The violating component with the fewest vertices, ties to the smallest index.
fn smallest_violation(g: &Graph, set: &VertexSet) -> Result<Option<(VertexSet, VertexSet)>, Error> {
    Ok(collapsibility_violations(g, set)?.into_iter().min_by_key(|(m, _)| (m.len(), m.first())))
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> CliResult {
    let g = load_graph(&args.input)?;
    let set = g.set_of(&args.set)?;
    if is_collapsible(&g, &set)? {
        write_out(out, "collapsible\n")?;
        return Ok(0);
    }
    let (m, boundary) = smallest_violation(&g, &set)?.expect("non-collapsible set has a violation");
    write_out(
        out,
        &format!(
            "not collapsible\ncomponent {} has non-complete boundary {}\n",
            braced(&g.sorted_labels(&m)),
            braced(&g.sorted_labels(&boundary)),
        ),
    )?;
    Ok(EXIT_NOT_COLLAPSIBLE)
}

pub fn cmd_separator(args: &SeparatorArgs, out: &mut dyn Write) -> CliResult {
    let g = load_graph(&args.input)?;
    let x = g.vertex(&args.x)?;
    let y = g.vertex(&args.y)?;
    let text = if args.enumerate {
        let seps = enumerate_minimal_separators_capped(&g, x, y, enum_cap()?)?;
        let parts: Vec<String> = seps.iter().map(|s| braced(&g.sorted_labels(s))).collect();
        parts.join(", ")
    } else {
        let (near, far) = match args.close_to {
            CloseTo::X => (x, y),
            CloseTo::Y => (y, x),
        };
        g.sorted_labels(&close_separator(&g, near, far)?.set).join(" ")
    };
    write_out(out, &(text + "\n"))?;
    Ok(0)
}

/// Header comment written at the top of generated files.
pub fn gen_header(config: &GenConfig) -> String {
    format!("collapsible gen {config}")
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult {
    let config = GenConfig::new(args.model, args.n, args.p, args.seed)?;
    let g = config.generate()?;
    let text = write_edge_list(&g, Some(&gen_header(&config)));
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?,
        None => write_out(out, &text)?,
    }
    Ok(0)
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult {
    let config = BenchConfig {
        suite: args.suite,
        sizes: args.sizes.clone(),
        probabilities: args.probabilities.clone(),
        reps: args.reps,
        targets_per_graph: args.targets_per_graph,
        seed: args.seed,
        enum_cap: enum_cap()?,
    };
    let report = bench::run_bench(&config)?;
    let text = match args.format {
        BenchFormat::Table => report.to_table(),
        BenchFormat::Csv => report.to_csv(),
        BenchFormat::Json => serde_json::to_string_pretty(&report).expect("report serialises") + "\n",
    };
    write_out(out, &text)?;
    Ok(0)
}
