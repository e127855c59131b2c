//! Command-line front end of the `pflicm` toolkit.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;

use clap::Parser;

use args::{Cli, Command};
use config::{PipelineConfig, PipelineKind, SynthConfig};
use error::CliResult;

/// Parses `argv` and runs the selected command; returns the process exit code.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command) -> CliResult<()> {
    match command {
        Command::Segment(args) => commands::segment(&PipelineConfig::resolve(PipelineKind::Image, &args.settings()?)?),
        Command::Compare(args) => commands::compare(&PipelineConfig::resolve(PipelineKind::Image, &args.settings()?)?),
        Command::Cluster(args) => commands::cluster(&PipelineConfig::resolve(PipelineKind::Table, &args.settings()?)?),
        Command::Synth(args) => commands::synth(&SynthConfig::resolve(&args.settings()?)?),
    }
}

