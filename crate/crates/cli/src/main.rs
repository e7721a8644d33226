//! `g2torus`: verification suites and point reports for G₂-structures on T⁷.

mod config;
mod cycles_cmd;
mod phi_file;
mod point;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use config::{RunArgs, RunConfig};
use report::{Check, Report};

#[derive(Parser, Debug)]
#[command(
    name = "g2torus",
    version,
    about = "Verify G2-structure geometry on the flat 7-torus"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a module's invariant suite.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// Report moduli, Jacobian and pseudo-Kähler quantities at one point.
    ReportPoint {
        #[arg(value_enum)]
        source: Source,
        /// JSON file with the 3-form (for `file`).
        path: Option<PathBuf>,
    },
    /// Calibrated-cycle demonstrations.
    Cycles {
        #[arg(value_enum)]
        demo: Demo,
    },
    /// Print the anchor identifiers checks may cite, as JSON.
    Anchors,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Algebra,
    Moduli,
    Jacobian,
    Cycles,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Standard,
    File,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    Assoc,
    Coassoc,
    Ddt,
    Aj,
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<(), InputError> {
    match json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json() + "\n")
                .map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?;
            print!("{}", report.summary());
        }
        None => print!("{}", report.summary()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, InputError> {
    let cfg = RunConfig::from_args(&cli.run).map_err(InputError)?;
    let start = Instant::now();
    let mut report = match cli.command {
        Command::Verify { target } => suites::verify(target, &cfg),
        Command::ReportPoint { source, path } => {
            point::report_point(source, path.as_deref(), &cfg)?
        }
        Command::Cycles { demo } => cycles_cmd::run(demo, &cfg),
        Command::Anchors => unreachable!("handled before configuration"),
    };
    let floor = g2torus::fd::STEP_FLOOR;
    let step = Check::holds(
        "finite-difference step above the float floor",
        "finite-difference-step",
        cfg.fd_step >= floor,
        cfg.fd_step,
    );
    report.push(if cfg.fd_step >= floor {
        step
    } else {
        step.with_note(format!("step below float floor {floor:e}"))
    });
    report.finish(start.elapsed().as_millis());
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(cli.command, Command::Anchors) {
        println!(
            "{}",
            serde_json::to_string_pretty(report::ANCHORS).expect("static list")
        );
        return ExitCode::SUCCESS;
    }
    let json = cli.run.json.clone();
    match run(cli).and_then(|r| emit(&r, json.as_ref()).map(|_| r)) {
        Ok(r) if r.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
