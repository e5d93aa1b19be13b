//! Library half of the `intensity-lab` binary: commands, reports, the group
//! cache and the verification runner.

pub mod cache;
pub mod commands;
pub mod report;
pub mod verify;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const CHECK_FAILED: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const BAD_INPUT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] intensity_core::Error),

    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    #[error("invalid option: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use intensity_core::Error as E;
        match self {
            CliError::Core(E::CapacityExceeded { .. }) => exit::CAPACITY,
            CliError::Core(E::Consistency(_) | E::NotAnObelisk | E::NotAHomomorphism | E::NotBijective) => {
                exit::CHECK_FAILED
            }
            CliError::Core(_) | CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => exit::BAD_INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
