use std::path::PathBuf;

use diamond_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// I/O failures and comparisons that found a point outside the outer region.
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const VARIANT: i32 = 3;
    pub const SOLVER: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Config { path: PathBuf, source: serde_json::Error },

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed region file: {0}")]
    Schema(String),

    #[error("{inner} leaves {outer} at {failing} of {total} rays")]
    NotContained { inner: String, outer: String, failing: usize, total: usize },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => exit::USAGE,
            CliError::Core(e) => core_code(e),
            CliError::Io { .. } | CliError::Output(_) | CliError::Csv(_) | CliError::Json(_) | CliError::Schema(_) => exit::FAILURE,
            CliError::NotContained { .. } => exit::FAILURE,
        }
    }
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::UnsupportedVariant { .. } => exit::VARIANT,
        CoreError::Lp(_) | CoreError::Unsolved { .. } => exit::SOLVER,
        CoreError::AtRatio { source, .. } => core_code(source),
        _ => exit::USAGE,
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
