//! Shared error type with stable kinds and process exit codes.

use thiserror::Error;

/// All failure modes surfaced by the library and the CLI.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// An edge references a vertex outside `1..=vertex_count`, repeats an
    /// endpoint, or duplicates another edge.
    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    /// A parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation would exceed its configured size cap.
    #[error("resource limit exceeded: {what} needs {needed}, cap is {limit}")]
    ResourceLimit {
        what: String,
        needed: u128,
        limit: u128,
    },

    /// The requested multiplicity vector admits no multiweb.
    #[error("infeasible multiplicity: {0}")]
    InfeasibleMultiplicity(String),

    /// The target density is not strictly inside the feasible polytope.
    #[error("density not strictly feasible: {0}")]
    NotFeasible(String),

    /// An iterative solver hit its iteration cap before reaching tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// The local window does not fit in the cycle without self-overlap.
    #[error("window wraps: cycle length {0} is below the minimum of 11")]
    WindowWraps(u64),

    /// No valid initial Markov-chain state could be constructed.
    #[error("sampler initialization failed: {0}")]
    InitFailure(String),

    /// A numeric invariant that should hold by construction was violated.
    #[error("numeric check failed: {0}")]
    Numeric(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON input, with the position serde reported.
    #[error("json error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    /// One or more verification properties failed.
    #[error("verification failed: {0} properties")]
    VerificationFailed(usize),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl Error {
    /// Stable machine-readable kind, used in the CLI's JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidEdge(_) => "InvalidEdge",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::InfeasibleMultiplicity(_) => "InfeasibleMultiplicity",
            Error::NotFeasible(_) => "NotFeasible",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::WindowWraps(_) => "WindowWraps",
            Error::InitFailure(_) => "InitFailure",
            Error::Numeric(_) => "Numeric",
            Error::Io(_) => "Io",
            Error::Json { .. } => "Json",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }

    /// Process exit code: 2 validation, 3 resource limits, 4 non-convergence,
    /// 5 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            Error::NoConvergence { .. } => 4,
            Error::VerificationFailed(_) => 5,
            _ => 2,
        }
    }
}
