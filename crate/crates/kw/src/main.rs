#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kw::commands;
use kw::grid::{parse_grid, parse_lambda};
use kw::CliError;
use kw_core::{QOptions, C64};

#[derive(Parser)]
#[command(name = "kw", version, about = "Weyl coefficients and duality checks for integral systems")]
struct Cli {
    /// Target enclosure radius for limit-point systems.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Number of truncation doublings allowed.
    #[arg(long, global = true, default_value_t = 200)]
    budget: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a system file.
    Validate {
        file: PathBuf,
        /// Print the canonical form of the file.
        #[arg(long)]
        canonical: bool,
    },
    /// Regular/singular and limit-point/limit-circle classification.
    Classify { file: PathBuf },
    /// Principal coefficient q at the given points.
    Q {
        file: PathBuf,
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Compare q of the system and of its dual.
    DualCheck {
        file: PathBuf,
        /// Defaults to i, 1+i and -2.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
    },
    /// Run the identity checks on one system.
    Suite { file: PathBuf },
    /// q over a grid, as CSV.
    Sweep {
        file: PathBuf,
        /// `linear:re_min,re_max,n,im` or `neglog:t_min,t_max,n`.
        #[arg(long)]
        grid: String,
    },
}

fn lambdas(list: &[String], grid: Option<&str>) -> Result<Vec<C64>, CliError> {
    let mut out = list.iter().map(|s| parse_lambda(s)).collect::<Result<Vec<_>, _>>()?;
    if let Some(g) = grid {
        out.extend(parse_grid(g)?);
    }
    Ok(out)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let opts = QOptions {
        tol: cli.tol,
        budget: cli.budget,
    };
    if !(cli.tol > 0.0) {
        return Err(CliError::Parse("--tol must be positive".into()));
    }
    let mut out = sink(cli.out.as_deref())?;
    let code = match cli.command {
        Command::Validate { file, canonical } => commands::validate(&file, canonical, &mut out)?,
        Command::Classify { file } => commands::classify(&file, &mut out)?,
        Command::Q { file, lambdas: l, grid } => {
            let points = lambdas(&l, grid.as_deref())?;
            commands::q_table(&file, &points, opts, &mut out)?
        }
        Command::DualCheck { file, lambdas: l } => {
            let mut points = lambdas(&l, None)?;
            if points.is_empty() {
                points = vec![C64::new(0.0, 1.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.0)];
            }
            commands::dual_check(&file, &points, opts, &mut out)?
        }
        Command::Suite { file } => commands::suite(&file, opts, &mut out)?,
        Command::Sweep { file, grid } => {
            let points = parse_grid(&grid)?;
            commands::sweep(&file, &points, opts, &mut out)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
