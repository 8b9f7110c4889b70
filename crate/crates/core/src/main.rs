use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::error;

use spin_control::cases::{format_table, oracle_check, run_cases};
use spin_control::config::parse_config;
use spin_control::{analyze, close, AnalysisOptions, Axis, Error};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "spinctl", version, about = "Controllability of spin-1/2 networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a network configuration (JSON file, or `-` for stdin).
    Analyze {
        file: String,
        /// Include the closure basis in the report.
        #[arg(long)]
        basis: bool,
        /// Override the control axes, e.g. `x,y`.
        #[arg(long, value_delimiter = ',', value_parser = parse_axis)]
        axes: Option<Vec<Axis>>,
        /// Abort the closure beyond this dimension.
        #[arg(long)]
        cap: Option<usize>,
        /// Skip the invariant-form probe.
        #[arg(long)]
        no_probe: bool,
    },
    /// Run the built-in reference cases.
    Cases {
        selector: Option<String>,
        /// Cross-check every case against the dense numeric closure.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_delimiter = ',', value_parser = parse_axis)]
        axes: Option<Vec<Axis>>,
        /// Emit JSON rows instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Compare the exact closure of a configuration with the dense oracle.
    OracleCheck { file: String },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    Axis::parse(s).ok_or_else(|| format!("unknown axis {s:?}"))
}

fn read_input(file: &str) -> Result<String, Error> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn fail(e: Error) -> ExitCode {
    error!("{e}");
    eprintln!("error: {e}");
    ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_INCONSISTENT })
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    write_stdout(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// A closed downstream pipe is not an error.
fn write_stdout(text: &str) -> Result<(), Error> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze { file, basis, axes, cap, no_probe } => {
            let config = parse_config(&read_input(&file)?)?;
            let (mut net, _) = config.to_network()?;
            if let Some(axes) = axes {
                net = net.with_axes(axes);
            }
            let options =
                AnalysisOptions { cap: cap.or(config.closure_cap), include_basis: basis, skip_probe: no_probe };
            let report = analyze(&net, &options)?;
            print_json(&report)?;
            Ok(if report.is_consistent() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INCONSISTENT) })
        }
        Command::Cases { selector, oracle, axes, json } => {
            let rows = run_cases(selector.as_deref(), oracle, axes.as_deref())?;
            if json {
                print_json(&rows)?;
            } else {
                write_stdout(&format_table(&rows))?;
            }
            Ok(if rows.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
        }
        Command::OracleCheck { file } => {
            let config = parse_config(&read_input(&file)?)?;
            let (net, _) = config.to_network()?;
            let closure = close(&spin_control::spin_model::generators(&net)?, net.n, config.closure_cap)?;
            let check = oracle_check(&net, &closure.basis)?;
            let agree = check.dimension == closure.dimension && check.max_bracket_error < 1e-12;
            print_json(&serde_json::json!({
                "exact_dimension": closure.dimension,
                "oracle_dimension": check.dimension,
                "near_threshold": check.near_threshold,
                "max_bracket_error": check.max_bracket_error,
                "agree": agree,
            }))?;
            Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INCONSISTENT) })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    run(cli).unwrap_or_else(fail)
}
