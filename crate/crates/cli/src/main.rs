use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tropdiff::frontend::commands::{self, Report};
use tropdiff::frontend::{json, parse_document, Document};
use tropdiff::rational::parse_q;
use tropdiff::{Error, Result};

/// Tropical differential algebra on exact series.
#[derive(Parser)]
#[command(name = "tropdiff", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropicalize each generator and its derivatives.
    Tropicalize {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        deriv_bound: u32,
    },
    /// Apply a power/shift/blow-up transformation and print the new system.
    Transform {
        file: PathBuf,
        /// Spec name from the file, or literal text like "power 2; shift 0".
        #[arg(long)]
        spec: String,
    },
    /// Substitute a series candidate and inspect the residuals.
    Check {
        file: PathBuf,
        #[arg(long)]
        candidate: String,
        /// Residuals must vanish below this weighted order (default: $TROPDIFF_DEFAULT_BOUND or 10).
        #[arg(long)]
        order: Option<String>,
    },
    /// Test a support (or the support of a series) for being a tropical solution.
    TropCheck {
        file: PathBuf,
        #[arg(long)]
        candidate: String,
        #[arg(long, default_value_t = 3)]
        deriv_bound: u32,
        /// Treat the candidate as a logsupport (transseries with log t).
        #[arg(long)]
        logs: bool,
    },
    /// List the boolean supports in {0..window} that pass the tropical test.
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        window: u32,
        #[arg(long, default_value_t = 3)]
        deriv_bound: u32,
    },
    /// Check equivariance and invertibility of a transformation on the candidates.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        spec: String,
    },
    /// Print the canonical form of a document.
    Fmt { file: PathBuf },
}

fn load(path: &PathBuf) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Tropicalize { file, deriv_bound } => commands::tropicalize_cmd(&load(file)?, *deriv_bound),
        Command::Transform { file, spec } => {
            let doc = load(file)?;
            commands::transform_cmd(&doc, &doc.resolve_spec(spec)?)
        }
        Command::Check { file, candidate, order } => {
            let order = match order {
                Some(s) => parse_q(s).ok_or_else(|| Error::InvalidArgument(format!("--order '{s}' is not a rational")))?,
                None => commands::default_order()?,
            };
            commands::check_cmd(&load(file)?, candidate, &order)
        }
        Command::TropCheck { file, candidate, deriv_bound, logs } => {
            commands::trop_check_cmd(&load(file)?, candidate, *deriv_bound, *logs)
        }
        Command::Search { file, window, deriv_bound } => commands::search_cmd(&load(file)?, *window, *deriv_bound),
        Command::Roundtrip { file, spec } => {
            let doc = load(file)?;
            commands::roundtrip_cmd(&doc, &doc.resolve_spec(spec)?)
        }
        Command::Fmt { file } => commands::fmt_cmd(&load(file)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", json::render(&report.json));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::error_exit_code(&e) as u8)
        }
    }
}
