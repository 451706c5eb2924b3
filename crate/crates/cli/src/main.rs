//! `bunkbed`: exact connection probabilities on bunkbed graphs and checks of
//! the bunkbed inequality.

mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use bunkbed_core::config::{DEFAULT_ENUMERATION_CAP, DEFAULT_FRONTIER_WIDTH};
use clap::builder::TypedValueParser as _;
use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::code;

#[derive(Parser, Debug)]
#[command(
    name = "bunkbed",
    version,
    about = "Exact edge percolation on bunkbed graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest number of edges brute force will enumerate.
    #[arg(long, global = true, env = "BUNKBED_CAP", default_value_t = DEFAULT_ENUMERATION_CAP,
          value_parser = clap::value_parser!(u64).range(1..63).map(|v| v as usize))]
    pub cap: usize,
    /// Largest frontier the frontier engine will carry.
    #[arg(long, global = true, default_value_t = DEFAULT_FRONTIER_WIDTH)]
    pub width: usize,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for random weights.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; `check` and `search` default to json, the rest to table.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbMethod {
    /// Decomposition with --bunkbed, otherwise brute force within the cap
    /// and the frontier engine beyond it.
    Auto,
    Brute,
    Frontier,
    Decomp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStrategy {
    Auto,
    Sweep,
    Enumeration,
    Decomposition,
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// `grid` ({1/4, 1/2, 3/4}), `grid:V1,V2,...` or `random:N`.
    #[arg(long, default_value = "grid")]
    pub weights: String,
    /// Denominator of random weight values.
    #[arg(long, default_value_t = bunkbed_core::checker::DEFAULT_RANDOM_DENOMINATOR)]
    pub denominator: u64,
    /// Report deltas strictly below this value as violations.
    #[arg(long, default_value = "0")]
    pub threshold: String,
    #[arg(long, value_enum, default_value_t = CheckStrategy::Auto)]
    pub strategy: CheckStrategy,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact connection probability between two vertices.
    Prob {
        graph: PathBuf,
        weight: PathBuf,
        x: String,
        y: String,
        /// Read the graph as the base of a bunkbed and the weight file as a
        /// symmetric weight; vertices are tagged `3-` / `3+`.
        #[arg(long)]
        bunkbed: bool,
        #[arg(long, value_enum, default_value_t = ProbMethod::Auto)]
        method: ProbMethod,
    },
    /// Collapse one side of a cut vertex into the post there.
    Reduce {
        graph: PathBuf,
        /// Symmetric weight file.
        weight: PathBuf,
        /// The cut vertex.
        #[arg(long)]
        cut: String,
        /// Vertices whose components (with the cut vertex removed) are
        /// collapsed, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        collapse: Vec<String>,
        #[arg(long)]
        out_graph: Option<PathBuf>,
        #[arg(long)]
        out_weight: Option<PathBuf>,
    },
    /// Check the bunkbed inequality on one graph. Exits 1 on a violation.
    Check {
        graph: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Pair `X,Y` to check; repeatable.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// Check every pair `x <= y` (the default when no --pair is given).
        #[arg(long, conflicts_with = "pairs")]
        all_pairs: bool,
        /// Glue this graph onto GRAPH and also verify the collapse of each
        /// side; requires --at.
        #[arg(long, requires = "at")]
        glue: Option<PathBuf>,
        /// `A,B`: vertex A of GRAPH is identified with vertex B of --glue.
        #[arg(long, requires = "glue")]
        at: Option<String>,
    },
    /// Check many graphs, saving violations as they are found.
    Search {
        /// Graph files.
        graphs: Vec<PathBuf>,
        /// Also every tree on this many vertices.
        #[arg(long)]
        trees: Option<usize>,
        /// Also every graph on this many vertices, up to isomorphism.
        #[arg(long)]
        all_graphs: Option<usize>,
        /// Skip graphs that are not 2-connected.
        #[arg(long)]
        two_connected: bool,
        /// Directory for violation files.
        #[arg(long)]
        save: Option<PathBuf>,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// List the trees on N vertices, or check each of them.
    Trees {
        n: usize,
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Recompute a saved violation from its graph and weight.
    Recheck { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(code::PRECONDITION);
        }
    }
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
