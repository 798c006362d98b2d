use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {msg}")]
    Config { field: String, msg: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("engine error: {0}")]
    Engine(#[from] diracwalk::WalkError),
    #[error("verification failed: {0} check(s) did not pass")]
    Verify(usize),
}

impl CliError {
    pub fn config(field: &str, msg: impl Into<String>) -> Self {
        CliError::Config {
            field: field.to_string(),
            msg: msg.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Process exit code: 2 config, 3 i/o, 4 verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Engine(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Verify(_) => 4,
        }
    }
}
