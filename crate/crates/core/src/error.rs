use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    Malformed(String),
    OutOfRange { vertex: usize, n: usize },
    DuplicateEdge(usize, usize),
    Loop(usize),
    EdgeCount { declared: usize, found: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing \"n m\" header"),
            ParseErrorKind::Malformed(s) => write!(f, "malformed line {s:?}"),
            ParseErrorKind::OutOfRange { vertex, n } => write!(f, "vertex {vertex} outside 1..{n}"),
            ParseErrorKind::DuplicateEdge(i, j) => write!(f, "duplicate edge {{{i},{j}}}"),
            ParseErrorKind::Loop(_) => write!(f, "loop"),
            ParseErrorKind::EdgeCount { declared, found } => {
                write!(f, "{found} edges found, header declares {declared}")
            }
        }
    }
}

/// Why a graph fails to be closed for a labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// For `i < j < k` the edges `present` exist but `missing` does not.
    Triple { i: usize, j: usize, k: usize, present: [(usize, usize); 2], missing: (usize, usize) },
    /// Exhaustive search found no closed labeling.
    NoClosedLabeling { n: usize, identity_violation: Box<Certificate> },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Triple { present, missing, .. } => write!(
                f,
                "edges {{{},{}}} and {{{},{}}} present but {{{},{}}} missing",
                present[0].0, present[0].1, present[1].0, present[1].1, missing.0, missing.1
            ),
            Certificate::NoClosedLabeling { n, identity_violation } => write!(
                f,
                "no closed labeling among all {n}! orderings (identity: {identity_violation})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("hypothesis violation: graph is not closed: {0}")]
    NotClosed(Certificate),
    #[error("isolated vertex {0} not allowed here")]
    IsolatedVertex(usize),
    #[error("oracle scale exceeded: {what} is {actual}, limit {limit}")]
    ScaleExceeded { what: &'static str, limit: usize, actual: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Budget or scale refusals, as opposed to bad input or math failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ScaleExceeded { .. } | Error::Poly(PolyError::BudgetExhausted { .. }))
            || matches!(self, Error::Poly(PolyError::TooManyVariables { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
