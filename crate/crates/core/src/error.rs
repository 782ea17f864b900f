use thiserror::Error;

/// Error type shared by the whole engine.
///
/// The variants mirror the failure classes of the public operations:
/// malformed input, violated preconditions, exceeded resource bounds,
/// out-of-domain arguments, and internal invariant violations (the last
/// of which always indicate a bug, never a property of the input).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource bound exceeded: {what} (bound {bound})")]
    Resource { what: String, bound: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ingestion error: {0}")]
    Ingestion(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn resource(what: impl Into<String>, bound: u64) -> Self {
        Error::Resource {
            what: what.into(),
            bound,
        }
    }
}
