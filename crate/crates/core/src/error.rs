use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed form is singular at the given argument; callers fall back to
    /// the recurrence or to the dense oracle.
    #[error("singular argument: {0}")]
    Singular(String),

    /// A reduced parameter (|xi| or |zeta|) vanishes and the secular equation
    /// is undefined; scans substitute the dense oracle at this point.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// The requested edge-state branch does not exist for these parameters.
    #[error("no edge state: {0}")]
    NoEdgeState(String),

    /// Input failed a structural check (e.g. non-Hermitian matrix).
    #[error("integrity error: {0}")]
    Integrity(String),

    /// The root finder could not account for every eigenvalue.
    #[error("internal consistency error: {0}")]
    RootCount(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
