use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clfree::combinatorics::EqualityMode;
use clfree::report::{analyze, certify_report, compare, ReportOptions};
use clfree::{Arrangement, Error};

/// Exact freeness computations for conic-line arrangements in the
/// projective plane over the rationals.
#[derive(Parser)]
#[command(name = "clfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputFlags {
    /// Emit the report as JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the report as plain text (the default).
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Singular points, local invariants, freeness, and combinatorics
    /// of one arrangement.
    Analyze {
        /// Arrangement JSON file.
        path: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
        /// Skip the addition-deletion certificate.
        #[arg(long)]
        no_certificate: bool,
        /// Seed for the shearing moves used to split singular clusters.
        #[arg(long)]
        chart_seed: Option<u64>,
    },
    /// Freeness certificate built from addition-deletion steps.
    Certify {
        /// Arrangement JSON file.
        path: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
        /// Seed for the shearing moves used to split singular clusters.
        #[arg(long)]
        chart_seed: Option<u64>,
    },
    /// Combinatorial equality and freeness of two arrangements.
    Compare {
        /// First arrangement JSON file.
        first: PathBuf,
        /// Second arrangement JSON file.
        second: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
        /// Which intersection matrix decides equality: strict
        /// (multiplicities) or incidence (membership only).
        #[arg(long, default_value = "strict")]
        equality: EqualityMode,
        /// Seed for the shearing moves used to split singular clusters.
        #[arg(long)]
        chart_seed: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Analyze {
            path,
            output,
            no_certificate,
            chart_seed,
        } => {
            let arr = Arrangement::load(&path)?;
            let opts = ReportOptions {
                certificate: !no_certificate,
                chart_seed,
                equality: EqualityMode::Strict,
            };
            let report = analyze(&arr, &opts)?;
            Ok(if output.json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
        Command::Certify {
            path,
            output,
            chart_seed,
        } => {
            let arr = Arrangement::load(&path)?;
            let opts = ReportOptions {
                chart_seed,
                ..ReportOptions::default()
            };
            let report = certify_report(&arr, &opts)?;
            Ok(if output.json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
        Command::Compare {
            first,
            second,
            output,
            equality,
            chart_seed,
        } => {
            let a = Arrangement::load(&first)?;
            let b = Arrangement::load(&second)?;
            let opts = ReportOptions {
                chart_seed,
                equality,
                ..ReportOptions::default()
            };
            let report = compare(&a, &b, &opts)?;
            Ok(if output.json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
