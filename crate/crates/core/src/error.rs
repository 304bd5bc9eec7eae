use std::io;

use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {0}: complete graph order must be even and at least 4")]
    InvalidOrder(usize),

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("the two 1-factors are identical")]
    IdenticalFactors,

    #[error("not a perfect matching: {0}")]
    NotAMatching(String),

    #[error("expected {expected} factors, found {found}")]
    FactorCount { expected: usize, found: usize },

    #[error("factors do not partition the edge set: edge {edge} is covered {times} times")]
    NotPartition { edge: Edge, times: usize },

    #[error("not a perfect 1-factorisation: factors {0} and {1} do not form a Hamilton cycle")]
    NotPerfect(usize, usize),

    #[error("parse error at token {token}, column {column}: {message}")]
    Parse {
        token: usize,
        column: usize,
        message: String,
    },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("development failed: {0}")]
    Development(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("{0}")]
    Latin(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(token: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            token,
            column,
            message: message.into(),
        }
    }
}
