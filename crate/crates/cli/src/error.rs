use lexmorse_core::Error;

use crate::formats::{BuildError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core { context: String, source: Error },
    #[error("bound exceeded: {what} is {value}, limit {limit}")]
    BoundExceeded {
        what: String,
        value: u128,
        limit: u128,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn core(context: impl Into<String>, source: Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn build(path: &str, e: BuildError) -> Self {
        match e {
            BuildError::Parse(source) => CliError::Parse {
                path: path.to_string(),
                source,
            },
            BuildError::Core(source) => CliError::core(path, source),
        }
    }

    /// 2 for errors that mean a computed structure broke an invariant, 1 for
    /// everything the user can fix by changing the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } if is_invariant(source) => 2,
            _ => 1,
        }
    }
}

fn is_invariant(e: &Error) -> bool {
    matches!(
        e,
        Error::NonIntervalOverlap { .. }
            | Error::UnexpectedHomology { .. }
            | Error::NotAcyclic
            | Error::NotUnique(_)
            | Error::PartnerNotCritical { .. }
            | Error::PairingConflict { .. }
    )
}
