use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwl_core::HostKind;

#[derive(Debug, Parser)]
#[command(name = "qwl", version, about = "Wirelength of 3-ary n-cube embeddings into cylinders and trees")]
pub struct Cli {
    /// Cap on worker threads used by parallel library operations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the guest cube or a host graph (optionally with its cut family).
    Gen(GenArgs),
    /// Compute the wirelength of the lexicographic embedding.
    Wl(WlArgs),
    /// Run isoperimetric, cut-family and engine-agreement checks.
    Verify(VerifyArgs),
    /// Search for embeddings with smaller wirelength than the formula.
    Search(SearchArgs),
    /// Cross-check all engines over a range of dimensions (CSV regression artifact).
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HostArg {
    Cylinder,
    Caterpillar,
    Firecracker,
    Banana,
}

impl From<HostArg> for HostKind {
    fn from(h: HostArg) -> Self {
        match h {
            HostArg::Cylinder => HostKind::Cylinder,
            HostArg::Caterpillar => HostKind::Caterpillar,
            HostArg::Firecracker => HostKind::Firecracker,
            HostArg::Banana => HostKind::Banana,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Cuts,
    Distance,
    All,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["guest", "host"]))]
pub struct GenArgs {
    /// Emit the guest 3-ary n-cube.
    #[arg(long)]
    pub guest: bool,
    /// Emit a host topology.
    #[arg(long, value_enum)]
    pub host: Option<HostArg>,
    #[arg(short = 'n', long = "n")]
    pub n: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also emit the host's cut family as JSON.
    #[arg(long, requires = "host")]
    pub cuts: bool,
    /// Where to write the cut family (after the graph on standard output when omitted).
    #[arg(long, requires = "cuts")]
    pub cuts_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WlArgs {
    /// Host topology; all four when omitted.
    #[arg(long, value_enum)]
    pub host: Option<HostArg>,
    #[arg(short = 'n', long = "n")]
    pub n: u32,
    #[arg(long, value_enum, default_value = "all")]
    pub method: Method,
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fill the runtime_ms column (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    /// Include the exhaustive induced-edge oracle where the vertex budget allows.
    #[arg(long)]
    pub brute_force: bool,
    /// Max vertices for exhaustive oracles.
    #[arg(long, env = "QWL_BUDGET")]
    pub budget: Option<usize>,
    /// json-edgelist host graph to check against the built host of --host and -n.
    #[arg(long, requires_all = ["host", "n"])]
    pub host_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub host: Option<HostArg>,
    #[arg(short = 'n', long = "n")]
    pub n: Option<u32>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub host: HostArg,
    #[arg(short = 'n', long = "n")]
    pub n: u32,
    /// Enumerate every bijection (refused above the vertex budget).
    #[arg(long, conflicts_with_all = ["restarts", "steps", "anneal"])]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    /// Proposed swaps per restart.
    #[arg(long, default_value_t = 4000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use simulated annealing instead of strict descent.
    #[arg(long)]
    pub anneal: bool,
    #[arg(long, default_value_t = 4.0, requires = "anneal")]
    pub t0: f64,
    #[arg(long, default_value_t = 0.9995, requires = "anneal")]
    pub cooling: f64,
    /// Max vertices for exhaustive search.
    #[arg(long, env = "QWL_BUDGET")]
    pub budget: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
    /// Write the SearchResult JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a counterexample report here if one is found (standard error otherwise).
    #[arg(long)]
    pub counterexample_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    /// Restrict to these hosts (all when omitted).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub hosts: Vec<HostArg>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
