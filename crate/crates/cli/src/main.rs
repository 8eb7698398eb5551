//! `polydist`: distance distributions in regular polygons from the command line.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Settings;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "polydist",
    version,
    about = "Node-distance distributions inside regular polygons and disks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the node-distance CDF F(u; r)
    Cdf(Settings),
    /// Tabulate the n-th nearest neighbour density f_n(u; r)
    Pdf(Settings),
    /// Print sorted distances, index vector and the active terms of each range
    Breakpoints(Settings),
    /// Empirical CDF, or n-th neighbour histograms when --nodes is given
    Simulate(Settings),
    /// Compare the closed forms with simulation and the grid oracle
    Verify(Settings),
}

type Handler = fn(&config::RunConfig) -> Result<commands::Report, CliError>;

fn run(command: Command) -> Result<commands::Report, CliError> {
    let (settings, handler): (Settings, Handler) = match command {
        Command::Cdf(s) => (s, commands::cdf),
        Command::Pdf(s) => (s, commands::pdf),
        Command::Breakpoints(s) => (s, commands::breakpoints),
        Command::Simulate(s) => (s, commands::simulate),
        Command::Verify(s) => (s, commands::verify),
    };
    let cfg = settings.resolve()?;
    let report = handler(&cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &report.text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .lock()
            .write_all(report.text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) if report.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("polydist: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
