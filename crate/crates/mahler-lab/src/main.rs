//! CLI: analyze Mahler equations and regular sequences, certify
//! multiplicative independence, and emit figure CSVs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mahler_lab::error::MahlerError;
use mahler_lab::exact::parse_rational;
use mahler_lab::report::{
    cmd_analyze, cmd_figure, cmd_independence, render_analyze, render_independence, RunConfig,
};

#[derive(Parser)]
#[command(name = "mahler-lab", version, about = "Asymptotics of Mahler equations and k-regular sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis pipeline on a catalog name or JSON file.
    Analyze {
        /// Catalog name (stern, baum-sweet, ..., cyclotomic:p[:k]) or a path.
        input: String,
        /// Working precision in decimal digits.
        #[arg(long)]
        precision: Option<u32>,
        /// Radial ladder depth.
        #[arg(long, default_value_t = 40)]
        depth: usize,
        /// Starting radius as an exact rational P/Q.
        #[arg(long, default_value = "1/2")]
        z0: String,
        /// Largest r for the partial-sum recurrence sigma(0..r).
        #[arg(long, default_value_t = 16)]
        r_max: usize,
    },
    /// Certify multiplicative independence of the inputs' constants.
    Independence {
        /// Catalog names or JSON files, one element each.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Exponent search bound.
        #[arg(long = "H", default_value_t = 50)]
        h: i64,
        /// Working precision in decimal digits.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Emit a figure CSV and plot script.
    Figure {
        /// stern-values or stern-weighted.
        name: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

fn env_precision() -> Option<u32> {
    std::env::var("MAHLER_LAB_PRECISION")
        .ok()
        .and_then(|s| s.parse().ok())
}

/// 2 for bad input, 3 for a pipeline failure.
fn code_for(err: &MahlerError) -> u8 {
    match err {
        MahlerError::InvalidInput(_)
        | MahlerError::UnknownEntry(_)
        | MahlerError::NotCoprime { .. }
        | MahlerError::NotOddPrime(_)
        | MahlerError::IncommensurableBases(_, _)
        | MahlerError::NonPositiveElement(_) => 2,
        _ => 3,
    }
}

fn run() -> Result<(), MahlerError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            input,
            precision,
            depth,
            z0,
            r_max,
        } => {
            let config = RunConfig {
                precision: precision.or_else(env_precision).unwrap_or(60),
                depth,
                z0: parse_rational(&z0)?,
                r_max,
                ..Default::default()
            };
            let report = cmd_analyze(&input, &config)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report JSON"));
            eprint!("{}", render_analyze(&report));
        }
        Command::Independence {
            inputs,
            h,
            precision,
        } => {
            let config = RunConfig {
                precision: precision.or_else(env_precision).unwrap_or(60),
                h,
                ..Default::default()
            };
            let run = cmd_independence(&inputs, &config)?;
            println!("{}", serde_json::to_string_pretty(&run).expect("verdict JSON"));
            eprint!("{}", render_independence(&run));
        }
        Command::Figure { name, out } => {
            let config = RunConfig {
                precision: env_precision().unwrap_or(60),
                out,
                ..Default::default()
            };
            let path = cmd_figure(&name, &config)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_for(&e))
        }
    }
}
