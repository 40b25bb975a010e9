use std::collections::BTreeSet;

/// Errors produced while building groups or computing on them.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("group of order {order} exceeds the size guard of {limit} (raise it with --max-order)")]
    SizeLimit { order: usize, limit: usize },
    #[error("subgroup enumeration exceeded the cap of {cap} subgroups ({found} found so far)")]
    Explosion { cap: usize, found: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("syntax error at {line}:{column}: {message}; expected one of {}", fmt_expected(.expected))]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        expected: BTreeSet<String>,
    },
    #[error("in `{parameter}`: {message}")]
    Semantic { parameter: String, message: String },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("i/o error: {0}")]
    Io(String),
}

fn fmt_expected(expected: &BTreeSet<String>) -> String {
    expected.iter().cloned().collect::<Vec<_>>().join(", ")
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
