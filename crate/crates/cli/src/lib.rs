//! Command-line front end: band scans, edge-state reports, analytic-versus-
//! oracle validation, wavefunction profiles and zero-mode reports.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Parser, Subcommand};
use config::Settings;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<anisoribbon::Error> for CliError {
    fn from(e: anisoribbon::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "anisoribbon", version, about = "Spectra and edge states of anisotropic square and triangular ribbons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Band table over the zone (k, band, energy, class, u, ipr, source)
    Bands(CommandArgs),
    /// Edge-state regime report (JSON)
    Edges(CommandArgs),
    /// Compare closed forms against the dense solver
    Validate(CommandArgs),
    /// Wavefunction profile of one state
    Wavefunction(CommandArgs),
    /// Zero-mode report for the general square ribbon (JSON)
    Zeromodes(CommandArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommandArgs {
    /// JSON file mirroring the flags; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

impl CommandArgs {
    pub fn resolve(&self) -> Result<Settings, CliError> {
        match &self.config {
            Some(path) => Ok(self.settings.over(Settings::load(path)?)),
            None => Ok(self.settings.clone()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("anisoribbon: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Bands(args) => commands::bands::run(&args.resolve()?),
        Command::Edges(args) => commands::edges::run(&args.resolve()?),
        Command::Validate(args) => commands::validate::run(&args.resolve()?),
        Command::Wavefunction(args) => commands::wavefunction::run(&args.resolve()?),
        Command::Zeromodes(args) => commands::zeromodes::run(&args.resolve()?),
    }
}
