//! Command-line front end for `rectpole-core`: run configuration, JSON and
//! CSV documents, and static SVG pole charts.
//!
//! [`run`] is the whole program behind `main`; it never exits the process
//! and returns the bytes for each stream with the exit code.

pub mod cli;
pub mod commands;
pub mod config;
pub mod document;
pub mod error;
pub mod export;
pub mod json;
pub mod svg;
pub mod verify;

use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::{Cli, Command};
use crate::commands::Product;
use crate::config::RunConfig;
use crate::error::{exit, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Outcome {
    fn failed(e: &CliError) -> Self {
        Self {
            exit_code: e.exit_code(),
            stdout: Vec::new(),
            stderr: format!("{}\n", e.to_json()).into_bytes(),
        }
    }
}

/// Defaults, then the `--config` file, then explicit flags.
pub fn resolve_config(command: &Command) -> Result<RunConfig, CliError> {
    let mut config = match command.config_path() {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    command.apply(&mut config);
    config.validate()?;
    Ok(config)
}

pub fn execute(command: &Command, config: &RunConfig) -> Result<Product, CliError> {
    match command {
        Command::Axis(_) => commands::axis(config),
        Command::Chart(_) => commands::chart(config),
        Command::Critical(_) => commands::critical(config),
        Command::Threshold(_) => commands::threshold(config),
        Command::Sweep(_) => commands::sweep(config),
        Command::Verify(_) => commands::verify(config),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                exit_code: exit::OK,
                stdout: e.render().to_string().into_bytes(),
                stderr: Vec::new(),
            };
        }
        Err(e) => {
            let message = e.render().to_string();
            return Outcome::failed(&CliError::usage(message.trim_end()));
        }
    };
    let result = resolve_config(&cli.command).and_then(|config| {
        let product = execute(&cli.command, &config)?;
        let mut stdout = Vec::new();
        match &config.output.out {
            Some(path) => write_file(path, &product.document)?,
            None => stdout = product.document.into_bytes(),
        }
        if let (Some(path), Some(svg)) = (&config.output.svg, &product.svg) {
            write_file(path, svg)?;
        }
        Ok(Outcome {
            exit_code: product.exit_code,
            stdout,
            stderr: Vec::new(),
        })
    });
    result.unwrap_or_else(|e| Outcome::failed(&e))
}
