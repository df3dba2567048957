use sepdeg_core::{Error, GfError, InvariantsError, LinalgError, MpolyError, OracleError, RepError};

/// Exit statuses: verification failures use 1 and are not errors.
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_ENGINE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("dimension memo disagrees: {0}")]
    Memo(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) => core_exit_code(e),
            CliError::Memo(_) | CliError::Output { .. } => EXIT_ENGINE,
        }
    }
}

/// Resource limits and internal algebra failures are engine errors; every
/// other library error traces back to the descriptor, field, point or
/// target the user supplied.
fn core_exit_code(e: &Error) -> u8 {
    let internal = |ie: &InvariantsError| matches!(ie, InvariantsError::Linalg(_) | InvariantsError::Mpoly(_));
    let engine = e.is_resource()
        || match e {
            Error::Linalg(_) | Error::Mpoly(_) => true,
            Error::Invariants(ie) | Error::Oracle(OracleError::Engine(ie)) => internal(ie),
            _ => false,
        };
    if engine {
        EXIT_ENGINE
    } else {
        EXIT_INPUT
    }
}

macro_rules! via_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}

via_core!(GfError, LinalgError, MpolyError, RepError, InvariantsError, OracleError);
