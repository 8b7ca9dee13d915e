use thiserror::Error;

/// Errors raised anywhere in the scouting pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid patent id {0:?}: nothing left after normalization")]
    InvalidId(String),

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("retrieval failed for query {query:?} via {connector}: {cause}")]
    Retrieval {
        connector: String,
        query: Vec<String>,
        cause: String,
    },

    #[error("{agent} agent failed: {cause}")]
    Agent { agent: String, cause: String },

    #[error("invalid k={k} for {n} vectors")]
    InvalidK { k: usize, n: usize },

    #[error("empty pipeline: {0}")]
    EmptyPipeline(String),

    #[error("pipeline invariant violated: {0}")]
    PipelineInvariant(String),

    #[error("provider {provider} failed: {cause}")]
    Provider { provider: String, cause: String },

    #[error("persist error at {path}: {cause}")]
    Persist { path: String, cause: String },

    #[error("run id {0} already exists")]
    RunIdConflict(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
