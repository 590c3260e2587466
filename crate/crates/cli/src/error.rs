use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cubemedian::Error),

    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: cubemedian::Error },

    #[error("invalid value for --{flag}: {source}")]
    Arg { flag: &'static str, source: cubemedian::Error },

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for resource caps, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::File { source: e, .. } | CliError::Arg { source: e, .. }
                if e.is_resource_cap() =>
            {
                2
            }
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
