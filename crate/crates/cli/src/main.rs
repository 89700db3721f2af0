mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

/// Exact values, certified lower bounds and constructive upper bounds for
/// k-page book crossing numbers of complete graphs.
#[derive(Debug, Parser)]
#[command(name = "bookcross", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory holding the certified-bound cache.
    #[arg(long, global = true, env = "BOOKCROSS_CACHE_DIR", default_value = "bookcross-cache")]
    pub cache_dir: PathBuf,
    /// Wall-clock budget per exact instance, in seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Search-node budget per exact instance.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// SDP solver tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Worker threads for independent instances (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chord-overlap graph statistics and edge list.
    Graph {
        #[arg(long)]
        n: usize,
    },
    /// The DDS drawing of K_n in k pages and its crossing count.
    Dds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Crossing counts Z_k(n) of the DDS drawings.
    Zk {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// nu_k(K_n) by branch-and-bound.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also export the weighted Max-SAT instance in DIMACS WCNF.
        #[arg(long)]
        wcnf_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = WcnfModeArg::Hard)]
        wcnf_mode: WcnfModeArg,
        /// Include the optimal page assignment of every chord.
        #[arg(long)]
        assignment: bool,
    },
    /// Certified lower bound on nu_k(K_n) from the Frieze-Jerrum relaxation.
    Sdp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Reuse a cached bound instead of solving when one exists.
        #[arg(long)]
        cached: bool,
        /// Do not write the result to the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Reproduce a results table: 1 exact values, 2 SDP ratios, 3 limit summary.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Values of k (comma separated); defaults to 3,4,5 for table 1 and 3..=20 otherwise.
        #[arg(long, value_delimiter = ',')]
        ks: Vec<usize>,
        /// Table 1 column range.
        #[arg(long, default_value_t = 7)]
        n_min: usize,
        #[arg(long, default_value_t = 11)]
        n_max: usize,
        /// SDP instance sizes (comma separated) for tables 2 and 3; table 3 uses the first.
        #[arg(long, value_delimiter = ',', default_value = "39")]
        m: Vec<usize>,
        /// Table 3 without the SDP column (formula columns only).
        #[arg(long)]
        no_sdp: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WcnfModeArg {
    Hard,
    AllSoft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dense,
    Reduced,
}

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            return ExitCode::from(e.code);
        }
    };
    let text = match report.render(cli.config.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if report.partial {
        eprintln!("warning: budget exhausted; cells marked budget-exceeded are bounds, not exact values");
        return ExitCode::from(EXIT_BUDGET);
    }
    ExitCode::SUCCESS
}
