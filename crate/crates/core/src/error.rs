use thiserror::Error;

/// Errors raised by the library.
///
/// `InvalidInput` covers anything the caller could have avoided; the CLI maps
/// it to exit status 2. `Invariant` means a computed object failed an internal
/// consistency check and maps to exit status 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular model: discriminant is zero")]
    Singular,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
