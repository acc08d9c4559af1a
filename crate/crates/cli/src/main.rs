//! `solgas`: evaluate soliton-gas solutions on grids, track the trial soliton, and run
//! the cross-checks.

mod commands;
mod config;
mod output;

use anyhow::Result;
use clap::{Parser, Subcommand};
use commands::{Ctx, Report, Series};
use config::Solver;
use output::Sink;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "solgas", version, about = "Soliton gas solvers and diagnostics")]
struct Cli {
    /// TOML configuration; the built-in scenario is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured solver.
    #[arg(long, global = true, value_enum)]
    solver: Option<Solver>,
    /// Output directory; overrides `output_path`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for point sweeps (default: available cores).
    #[arg(long, global = true, env = "SOLGAS_WORKERS")]
    workers: Option<usize>,
    /// Write all times of a grid into a single file.
    #[arg(long, global = true)]
    long_format: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite-N soliton solution over the grid.
    Exact,
    /// Fredholm-determinant gas solution over the grid (KdV with `--solver kdv`).
    Gas,
    /// Leading-order asymptotic solution over the grid, with its background and soliton parts.
    Asymptotic,
    /// Peak position, amplitude and velocity of the trial soliton over the series times.
    Peak,
    /// Instantaneous peak velocity against the effective soliton velocity.
    Velocities,
    /// Background phase shift induced by the trial soliton.
    Phaseshift {
        /// Band endpoints `α` to evaluate (default `eta2`).
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
    },
    /// Runs the cross-validation checks and prints a pass/fail table.
    Validate {
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
    /// Writes the data behind one of the canonical figures (1 to 5).
    Figure { n: u32 },
}

fn run(cli: Cli) -> Result<Report> {
    let mut cfg = match &cli.config {
        Some(p) => config::load(p)?,
        None => config::default_config()?,
    };
    if let Some(s) = cli.solver {
        cfg.solver = s;
    }
    let dir = cli.out.clone().unwrap_or_else(|| cfg.output_path.clone());
    std::fs::create_dir_all(&dir)?;
    let workers = match cli.workers {
        Some(0) => anyhow::bail!("--workers must be at least 1"),
        Some(n) => n,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let ctx = Ctx { sink: Sink { dir, long_format: cli.long_format }, workers, cfg };
    match cli.command {
        Command::Exact => commands::grid(&ctx, Solver::Exact, "exact"),
        Command::Gas => {
            let solver = if ctx.cfg.solver == Solver::Kdv { Solver::Kdv } else { Solver::Gas };
            commands::grid(&ctx, solver, if solver == Solver::Kdv { "kdv" } else { "gas" })
        }
        Command::Asymptotic => commands::grid(&ctx, Solver::Asymptotic, "asymptotic"),
        Command::Peak => commands::series(&ctx, Series::Peak, "peak"),
        Command::Velocities => commands::series(&ctx, Series::Velocities, "velocities"),
        Command::Phaseshift { alpha } => commands::phaseshift(&ctx, &alpha),
        Command::Validate { only } => commands::validate(&ctx, &only),
        Command::Figure { n } => commands::figure(&ctx, n, cli.solver),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            if let Some(m) = &report.manifest {
                eprintln!("{}", output::summarize(&report.failures, m));
            }
            if report.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
