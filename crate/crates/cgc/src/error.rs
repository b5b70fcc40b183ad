use crate::linalg::C64;
use thiserror::Error;

/// Failures raised by the geometry pipeline and the job runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("pole: spectral value {lambda} coincides with a pole of the factor")]
    Pole { lambda: C64 },
    #[error("inadmissible line{}", node_suffix(.node))]
    Admissibility { node: Option<(usize, usize)> },
    #[error("degenerate frame at node ({0}, {1})")]
    Degenerate(usize, usize),
    #[error("range error: {0}")]
    Range(String),
    #[error("integration error: {0}")]
    Integration(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("alignment error: {0}")]
    Alignment(String),
    /// Invalid job configuration; `pointer` is a JSON pointer into the config.
    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn config(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { pointer: pointer.into(), message: message.into() }
    }

    /// Process exit status: 2 for configuration and I/O problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

fn node_suffix(node: &Option<(usize, usize)>) -> String {
    match node {
        Some((i, j)) => format!(" at node ({i}, {j})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
