use thiserror::Error;

use crate::graph::GraphError;
use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what} has {size} vertices, above the direct-graph cap of {cap}")]
    GraphTooLarge { what: String, size: u64, cap: u64 },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("direct and quotient computations disagree for {0}")]
    PathMismatch(String),
}

impl Error {
    /// Whether the error comes from a resource cap rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::Group(GroupError::TooLarge { .. })
                | Error::Graph(GraphError::CycleLimitExceeded { .. })
                | Error::GraphTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
