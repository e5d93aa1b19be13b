use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {what} would exceed the configured bound {bound}")]
    CapacityExceeded { what: String, bound: u64 },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,

    #[error("generator images do not define a bijection")]
    NotBijective,

    #[error("group is not a p-obelisk")]
    NotAnObelisk,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
