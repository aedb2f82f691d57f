use crate::exact_algebra::Rational;
use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants map onto CLI exit codes: `Escalation` is 3, `Inconsistent` is 1,
/// everything else is an input problem (2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not positive semidefinite: {message} (witness {})", fmt_vec(.witness))]
    NotPsd { message: String, witness: Vec<Rational> },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("modular computation did not stabilise: {0}")]
    Escalation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Escalation(_) => 3,
            Error::Inconsistent(_) => 1,
            _ => 2,
        }
    }
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}

pub(crate) fn pre_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
