//! `hwgeo`: Hodge-Witt, slope and domino numbers from the command line.

mod commands;
mod output;
mod scan;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use hwgeo_core::slopes::Strictness;

use commands::{HypersurfaceArgs, Outcome, SurfaceArgs, SzpiroArgs, ThreefoldArgs};
use output::Format;
use scan::ScanArgs;

/// A problem with how the tool was invoked; exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Parser, Debug)]
#[command(
    name = "hwgeo",
    version,
    about = "Exact Hodge-Witt invariants of surfaces and threefolds in characteristic p"
)]
struct Cli {
    /// Output format (scan defaults to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Also require isoclinic slope multiplicities.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hodge, Betti and maximal domino numbers of a smooth hypersurface.
    Hypersurface(HypersurfaceArgs),
    /// Validate a surface record and evaluate its Hodge-Witt invariants.
    Surface(Box<SurfaceArgs>),
    /// Threefold Hodge-Witt numbers and the Calabi-Yau liftability checks.
    Threefold(ThreefoldArgs),
    /// Members of a Szpiro family of Frobenius-pulled-back fibrations.
    Szpiro(SzpiroArgs),
    /// Evaluate a family over a parameter grid.
    Scan(ScanArgs),
    /// Run the built-in fixture checks.
    Selftest,
}

fn run(cli: &Cli) -> Result<(Outcome, Format)> {
    let strictness = if cli.strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let default_format = match cli.command {
        Command::Scan(_) => Format::Csv,
        _ => Format::Table,
    };
    let outcome = match &cli.command {
        Command::Hypersurface(a) => commands::hypersurface(a)?,
        Command::Surface(a) => commands::surface(a, strictness)?,
        Command::Threefold(a) => commands::threefold(a)?,
        Command::Szpiro(a) => commands::szpiro(a)?,
        Command::Scan(a) => scan::scan(a)?,
        Command::Selftest => selftest::selftest()?,
    };
    Ok((outcome, cli.format.unwrap_or(default_format)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli).and_then(|(outcome, format)| Ok((outcome.report.render(format)?, outcome.ok))) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
