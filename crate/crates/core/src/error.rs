use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected: vertex {0} is unreachable from vertex {1}")]
    DisconnectedGraph(usize, usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("meaningless variant {variant}: {reason}")]
    MeaninglessVariant { variant: String, reason: String },

    #[error("variant {variant} is not supported by {solver}: {reason}")]
    UnsupportedVariant {
        solver: &'static str,
        variant: String,
        reason: String,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("balance bounds are infeasible: lower {lower} exceeds upper {upper}")]
    InfeasibleBounds { lower: String, upper: String },

    #[error("invalid balance specification: {0}")]
    InvalidBalance(String),

    #[error("instance is infeasible: {0}")]
    Infeasible(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("input is not an optimal fractional solution: {0}")]
    NotOptimalInput(String),

    #[error("balance bounds {lower}..{upper} are not integral")]
    NonIntegralBounds { lower: String, upper: String },

    #[error("rounding requires unit edge weights")]
    WeightedInstance,

    #[error("rounding could not keep district loads within bounds: {0}")]
    BalanceBreach(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("graph has {0} edges; at least 2 are required")]
    TooFewEdges(usize),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
