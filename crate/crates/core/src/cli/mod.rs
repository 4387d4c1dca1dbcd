//! Config-driven experiment runner behind the `levy-em` binary.
//!
//! ```text
//! levy-em <simulate|convergence|moments|nondegeneracy|besov-check>
//!         --config run.toml [--seed N] [--out DIR] [--threads K]
//!         [--allow-hypothesis-violation]
//! ```
//!
//! Each run writes `<out>/<command>.json` holding the effective config, its
//! SHA-256, the seed, the result and a `timestamp`, plus CSV tables:
//!
//! | command | file | header |
//! |---|---|---|
//! | simulate | `trajectory_path{i}_n{n}.csv`, `trajectory_path{i}_reference.csv` | `t,x_1,..,x_d` |
//! | convergence | `convergence_p{p}.csv` | `n,estimate,ci_low,ci_high,theory_value` |
//! | moments | `moments_p{p}.csv` | `n,estimate,ci_low,ci_high,theory_value` |
//! | nondegeneracy | `nondegeneracy_probes.csv` | `kind,radius,value,direction` |
//! | besov-check | `besov_ratios.csv` | `function,p,alpha,j,bernstein_ratio,dissipativity_integral,dissipativity_ratio` |
//! | besov-check | `besov_norms.csv` | `function,p,s,j,weighted_norm` |
//!
//! `.dat` files next to the rate tables hold whitespace-separated `n estimate`
//! columns for plotting.

mod config;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{
    ConvergenceConfig, DriftConfig, ExperimentConfig, MomentsConfig, NondegeneracyConfig, SimulateConfig,
};
pub use run::{exit_code, run, run_config, RunOptions, RunOutcome, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Dump scheme and reference trajectories driven by the same noise.
    Simulate,
    /// Strong-error rates against the reference solution.
    Convergence,
    /// Truncated moments of the noise increments.
    Moments,
    /// Nondegeneracy certificate of a Lévy measure.
    Nondegeneracy,
    /// Littlewood–Paley inequality suite and Besov tables.
    BesovCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Convergence => "convergence",
            Command::Moments => "moments",
            Command::Nondegeneracy => "nondegeneracy",
            Command::BesovCheck => "besov-check",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "levy-em", version, about = "Euler-Maruyama experiments for stable-driven SDEs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub allow_hypothesis_violation: bool,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let Some(config) = cli.config else {
        eprintln!("error: --config <PATH> is required");
        return 1;
    };
    let opts = RunOptions {
        config,
        seed: cli.seed,
        out: cli.out,
        threads: cli.threads,
        allow_hypothesis_violation: cli.allow_hypothesis_violation,
    };
    let result = run(cli.command, &opts);
    match &result {
        Ok(outcome) => {
            let verdict = match outcome.status {
                Status::Pass => "PASS",
                Status::Violation => "VIOLATION",
            };
            println!("{verdict} {}", outcome.report.display());
        }
        Err(e) => eprintln!("error: {e}"),
    }
    exit_code(&result)
}
