//! `nbtrace`: command-line front end for the nbtrace library.
//!
//! Exit status is 0 on success, 2 when a reported residual exceeds
//! `--tol`, and 1 on input or usage errors.

mod commands;
mod error;
mod funcspec;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nbtrace",
    version,
    about = "Non-backtracking walks and trace formulas on regular graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Edge-list file (first line `n q`, then `u v` per edge)
    #[arg(long, global = true, conflicts_with = "generate")]
    pub input: Option<PathBuf>,
    /// Graph family, e.g. cycle:5, complete:4, complete_bipartite:3, petersen,
    /// random_regular:10,3, torus:4,2
    #[arg(long, global = true)]
    pub generate: Option<String>,
    /// Residual tolerance; larger residuals exit with status 2
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest order, length or distance to report
    #[arg(long, global = true)]
    pub rmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for random_regular when the family string gives none
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time in `runtime_ms`
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Heat,
    Schrodinger,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, branching number, girth, bipartiteness and the Ramanujan bound
    Graph {
        /// Include the edge list
        #[arg(long)]
        edges: bool,
    },
    /// Closed non-backtracking walks f_r, circuits c_r and prime classes
    Nbw,
    /// Eigenvalues, spectral measure and Stieltjes samples
    Spectrum,
    /// Both sides of the trace formulas for one function
    Trace {
        /// Function, e.g. exp:z=0.5, expi:p=1, poly:n=4, cheb:Y3, log:t=0.3
        #[arg(long = "fn")]
        func: String,
        /// Vertex for the pre-trace formula
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// Longest prime class enumerated for the prime form
        #[arg(long, default_value_t = 12)]
        horizon: usize,
    },
    /// Ihara zeta: log series, determinant series and values of 1/zeta
    Zeta {
        /// Points at which 1/zeta is evaluated
        #[arg(long = "t", value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3])]
        points: Vec<f64>,
    },
    /// Heat or Schroedinger kernel on a graph, a regular tree or Z^D
    Heat {
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Kind::Heat)]
        kind: Kind,
        /// Row of the operator to print
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// Work on the (q+1)-regular tree instead of a graph
        #[arg(long, conflicts_with = "lattice")]
        tree: Option<u64>,
        /// Work on Z^D: offset between the two lattice points, e.g. 1,0
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lattice: Option<Vec<i64>>,
    },
    /// Walk counts on a graph, a regular tree or Z^D
    Walks {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 0)]
        to: usize,
        /// Work on the (q+1)-regular tree instead of a graph
        #[arg(long, conflicts_with = "lattice")]
        tree: Option<u64>,
        /// Distance between the endpoints on the tree
        #[arg(long, default_value_t = 0)]
        distance: u64,
        /// Work on Z^D: offset between the endpoints, e.g. 1,0
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lattice: Option<Vec<i64>>,
    },
    /// Fourier-Laplace transform of the spectral measure by both routes
    Fourier {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p: f64,
    },
}

fn render(report: &report::Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = commands::run(&cli).and_then(|mut report| {
        if cli.common.timing {
            report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok((render(&report, cli.common.format)?, report.worst_residual()))
    });
    match outcome {
        Ok((text, worst)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if worst > cli.common.tol {
                eprintln!(
                    "nbtrace: residual {worst:e} exceeds tolerance {:e}",
                    cli.common.tol
                );
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nbtrace: {e}");
            ExitCode::from(1)
        }
    }
}
