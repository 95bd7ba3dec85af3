use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("{name} = {value} is out of domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The closed form is being evaluated outside the regime where it holds.
    #[error("outside regime of validity: {0}")]
    Regime(String),
    #[error("operation requires {0}")]
    WrongModel(&'static str),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid configuration for `{field}`: {reason}")]
    Config { field: String, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }

    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } | Error::Config { .. } => 2,
            Error::Numerical(_) => 3,
            Error::Regime(_) | Error::WrongModel(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
