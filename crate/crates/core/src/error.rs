use thiserror::Error;

/// Coarse outcome category shared by the CLI and the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    InputError,
    Refused,
    InternalError,
}

impl Status {
    /// Stable process exit code for this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 2,
            Status::Refused => 3,
            Status::InternalError => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input_error",
            Status::Refused => "refused",
            Status::InternalError => "internal_error",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Input(String),

    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The input is well formed but violates a hypothesis of the formula
    /// being applied (for example a Seshadri constant of a non-ample class).
    #[error("{0}")]
    Refused(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn status(&self) -> Status {
        match self {
            Error::Input(_) | Error::DimensionMismatch { .. } => Status::InputError,
            Error::Refused(_) => Status::Refused,
            Error::Internal(_) => Status::InternalError,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
