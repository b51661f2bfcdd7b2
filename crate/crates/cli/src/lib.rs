//! Batch runner for the verification suites of `parind`.

pub mod config;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use config::RunConfig;
pub use report::{Report, Row, Status};
pub use suites::{run, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config {
        field: String,
        line: Option<usize>,
        message: String,
    },
    #[error("{0}")]
    Io(String),
    #[error("{suite}: {source}")]
    Core {
        suite: &'static str,
        #[source]
        source: parind::Error,
    },
}

impl CliError {
    /// 2 for configuration and input errors, 3 when a resource guard trips.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core {
                source: parind::Error::Resource { .. },
                ..
            } => 3,
            _ => 2,
        }
    }
}
