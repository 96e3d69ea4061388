use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameter n = {0}: n must be at least 1")]
    InvalidParameter(u64),

    #[error("group of order {order} exceeds the oracle limit of {limit} elements; use the closed-form path")]
    OracleLimitExceeded { order: u64, limit: u64 },

    #[error("cannot parse element {input:?}: {reason}")]
    ParseElement { input: String, reason: String },

    #[error("cannot parse subgroup descriptor {input:?}: {reason}")]
    ParseDescriptor { input: String, reason: String },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("membership grade {0} is outside [0, 1]")]
    InvalidGrade(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("descriptor {desc} is not a subgroup of U_{order}: {reason}")]
    InvalidDescriptor {
        desc: String,
        order: u64,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
