use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("braid closure of a length-{length} word exceeded the node budget of {limit}")]
    ClosureBudget { limit: usize, length: usize },

    #[error("ball construction exceeded the vertex budget of {limit} while building radius {radius}")]
    VertexBudget { limit: usize, radius: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Resource errors signal that an analysis hit a configured limit; the
    /// input itself was fine.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ClosureBudget { .. } | Error::VertexBudget { .. })
    }
}
