use thiserror::Error;

/// Errors raised by the library.
///
/// `Property` carries the name of the violated invariant; the CLI maps it to
/// exit code 1, while malformed input maps to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("input is not zero-sum")]
    NotZeroSum,

    #[error("vector {0} lies outside the unit ball")]
    OutsideUnitBall(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("property violated [{name}]: {detail}")]
    Property { name: String, detail: String },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn property(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Property {
            name: name.into(),
            detail: detail.into(),
        }
    }

    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::InvalidInput(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::NotZeroSum
                | Error::OutsideUnitBall(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `Err(Error::Property)` unless `cond` holds.
pub(crate) fn ensure(cond: bool, name: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::property(name, detail()))
    }
}
