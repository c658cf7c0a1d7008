use std::fmt;

use thermodiscord::Error;

/// A failed command, carrying its process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameter values.
    Config(anyhow::Error),
    /// The model or an estimator failed.
    Numeric(anyhow::Error),
    /// The derivative extremum sits on the sweep boundary.
    Boundary(anyhow::Error),
    /// Writing output failed.
    Io(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(_) | Failure::Io(_) => 3,
            Failure::Boundary(_) => 4,
        }
    }

    pub fn config(msg: impl fmt::Display) -> Self {
        Failure::Config(anyhow::anyhow!("{msg}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "configuration error: {e:#}"),
            Failure::Numeric(e) => write!(f, "numerical failure: {e:#}"),
            Failure::Boundary(e) => write!(f, "{e:#}"),
            Failure::Io(e) => write!(f, "output error: {e:#}"),
        }
    }
}

/// Library errors raised while computing.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ExtremumOnBoundary { .. } => Failure::Boundary(e.into()),
            _ => Failure::Numeric(e.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.into())
    }
}

pub type CmdResult<T> = Result<T, Failure>;
