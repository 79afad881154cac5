use thiserror::Error;

/// Errors shared across the space, descriptive, homotopy and complexity layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(f64),

    #[error("carrier must be nonempty")]
    EmptyCarrier,

    #[error("carrier of {size} points exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },

    #[error("spaces have different carriers ({left} vs {right})")]
    CarrierMismatch { left: String, right: String },

    #[error("feature row for `{point}` has {got} entries, expected arity {expected}")]
    ArityMismatch {
        point: String,
        expected: usize,
        got: usize,
    },

    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("maps disagree on overlap point `{0}`")]
    DisagreeOnOverlap(String),

    #[error("maps have different codomains")]
    CodomainMismatch,

    #[error("maps do not share a domain and codomain")]
    SignatureMismatch,

    #[error("map is not proximally continuous: {0} near {1} but images are far")]
    NotPc(String, String),

    #[error("need at least two maps")]
    EmptyMapList,

    #[error("space is not connected")]
    NotConnected,

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("no section can exist: point `{0}` has an empty preimage")]
    Infeasible(String),

    #[error("instance exceeds oracle limits (domain {domain} > {max_domain} or codomain {codomain} > {max_codomain})")]
    LimitsExceeded {
        domain: usize,
        max_domain: usize,
        codomain: usize,
        max_codomain: usize,
    },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("malformed document: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
