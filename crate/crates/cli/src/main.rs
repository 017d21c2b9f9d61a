//! `nonrecip` — transmission spectra, perfect-nonreciprocity conditions,
//! figure data sets, and oracle cross-checks for the two-cavity
//! optomechanical model, emitting CSV and JSON.
//!
//! Exit codes: 0 success, 2 usage/config error, 3 numerical failure.

// Validations are written as negated comparisons (`!(x > 0)`) so NaN fails
// them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;
mod theta;

use std::fmt;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration (exit 2).
    Usage(String),
    /// Solver or numerical failure (exit 3).
    Numeric(String),
    /// Filesystem failure (exit 1).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numeric(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "nonrecip",
    version,
    about = "Nonreciprocal-transmission toolkit for a two-cavity optomechanical model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission spectrum sweep: CSV rows plus a summary JSON on stdout
    Sweep(commands::SweepArgs),
    /// Analytic perfect-nonreciprocity conditions as JSON
    Conditions(commands::ConditionsArgs),
    /// Reference spectra and condition curves (fig2a..fig2d, fig3, fig4a..fig4d)
    Figure(commands::FigureArgs),
    /// Cross-check closed form vs linear solve vs time domain at one detuning
    Oracle(commands::OracleArgs),
    /// Self-consistent steady state of a physical configuration
    Steady(commands::SteadyArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            std::process::exit(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => commands::cmd_sweep(args),
        Command::Conditions(args) => commands::cmd_conditions(args),
        Command::Figure(args) => commands::cmd_figure(args),
        Command::Oracle(args) => commands::cmd_oracle(args),
        Command::Steady(args) => commands::cmd_steady(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
