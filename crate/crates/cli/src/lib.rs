//! Command-line front end: argument parsing, typed reports and their text,
//! JSON and LaTeX renderings.

pub mod args;
pub mod render;
pub mod report;

use clap::Parser;
use spinpic_core::{Error, Result};

pub use args::{Cli, Command, Format};
pub use report::{build, Report};

/// Parses `argv`, runs the command and renders the result.
pub fn run<I, T>(argv: I) -> std::result::Result<String, RunError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(RunError::Args)?;
    execute(&cli).map_err(RunError::Core)
}

pub fn execute(cli: &Cli) -> Result<String> {
    Ok(render::render(&build(&cli.command)?, cli.format))
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Args(clap::Error),
    #[error(transparent)]
    Core(Error),
}

impl RunError {
    /// 0 for help and version requests, 2 usage, 3 certification, 4 invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Args(e) if !e.use_stderr() => 0,
            RunError::Args(_) => 2,
            RunError::Core(Error::Usage(_)) => 2,
            RunError::Core(Error::Certification(_)) => 3,
            RunError::Core(Error::Invariant(_)) => 4,
        }
    }
}
