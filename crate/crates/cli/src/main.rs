//! `qthyper`: run the exact q-series verification suite.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qthyper::{all_passed, render_json, render_text, run, Config};
use qthyper_core::scalars::parse_rational;

#[derive(Parser)]
#[command(
    name = "qthyper",
    about = "Exact-arithmetic verification suite for Macdonald-polynomial \
             q-series identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and print a report.
    Run(RunArgs),
    /// List the registered check names.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Check name to run (repeatable); defaults to the full registry.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Variable counts for the grid-driven checks (repeatable).
    #[arg(long = "n")]
    n_values: Vec<usize>,
    /// Vandermonde depths t = q^k (repeatable).
    #[arg(long = "k")]
    k_values: Vec<u32>,
    /// Base parameter values, as `p/q` or decimals (repeatable).
    #[arg(long = "q")]
    q_values: Vec<String>,
    /// Partition-weight cap for partition-indexed grids.
    #[arg(long = "max-weight")]
    max_weight: Option<u32>,
    /// Truncation weight for series comparisons.
    #[arg(long = "degree")]
    degree: Option<u32>,
    /// Fixed Jackson truncation index (default: adaptive from the tolerance).
    #[arg(long = "jackson-m")]
    jackson_m: Option<u32>,
    /// Tolerance for truncated comparisons (`1e-10`, `0.001`, or `p/q`).
    #[arg(long = "tol")]
    tol: Option<String>,
    /// Report format.
    #[arg(long = "report", value_parser = ["text", "json"], default_value = "text")]
    report: String,
    /// Write the report to a file instead of stdout.
    #[arg(long = "out")]
    out: Option<std::path::PathBuf>,
}

fn build_config(args: &RunArgs) -> Result<Config, String> {
    let mut config = Config::default();
    if !args.checks.is_empty() {
        config.checks = Some(args.checks.clone());
    }
    if !args.n_values.is_empty() {
        config.n_values = args.n_values.clone();
    }
    if !args.k_values.is_empty() {
        config.k_values = args.k_values.clone();
    }
    if !args.q_values.is_empty() {
        config.q_values = args
            .q_values
            .iter()
            .map(|s| parse_rational(s).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
    }
    if let Some(w) = args.max_weight {
        config.max_weight = w;
    }
    if let Some(d) = args.degree {
        config.degree = d;
    }
    config.jackson_m = args.jackson_m;
    if let Some(t) = &args.tol {
        config.tol = parse_rational(t).map_err(|e| e.to_string())?;
    }
    Ok(config)
}

/// Writes to stdout, treating a closed pipe as an orderly stop.
fn write_stdout(s: &str) {
    let mut out = std::io::stdout().lock();
    let result = out.write_all(s.as_bytes()).and_then(|()| out.flush());
    if let Err(e) = result {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("cannot write to stdout: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            let mut listing = String::new();
            for (name, _) in qthyper::registry::REGISTRY.iter() {
                listing.push_str(name);
                listing.push('\n');
            }
            write_stdout(&listing);
            ExitCode::SUCCESS
        }
        Command::Run(args) => {
            let config = match build_config(&args) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("configuration error: {e}");
                    return ExitCode::from(2);
                }
            };
            let reports = match run(&config) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("configuration error: {e}");
                    return ExitCode::from(2);
                }
            };
            let rendered = match args.report.as_str() {
                "json" => render_json(&reports),
                _ => render_text(&reports),
            };
            if let Some(path) = &args.out {
                if let Err(e) = fs::write(path, &rendered) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                write_stdout(&rendered);
            }
            if all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
