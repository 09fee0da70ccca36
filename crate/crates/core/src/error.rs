use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid level set: {0}")]
    InvalidLevels(String),

    #[error("index {index} out of range for a space of {len} states")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("tuple does not address a state: {0}")]
    InvalidTuple(String),

    #[error("search space cardinality overflows u64")]
    CardinalityOverflow,

    #[error("subset size {requested} must lie in 1..={available}")]
    SubsetSize { requested: u64, available: u64 },

    #[error("refinement step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("interpolation nodes must be distinct")]
    DuplicateNodes,

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("quadrature tolerance not met after {refinements} refinements: estimate {estimate}, change {achieved}")]
    ToleranceNotMet {
        estimate: f64,
        achieved: f64,
        refinements: u32,
    },

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("root is not bracketed: f({lo}) and f({hi}) have the same sign")]
    NoBracket { lo: f64, hi: f64 },

    #[error("Chebyshev table holds degree {available}, degree {required} needed")]
    TableTooSmall { required: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("every evaluated state is infeasible ({evaluated} states)")]
    AllInfeasible { evaluated: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status for the command-line tool: 3 when every state is
    /// infeasible, 4 for I/O, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AllInfeasible { .. } => 3,
            Error::Io { .. } => 4,
            Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => 4,
            Error::Json(e) if e.is_io() => 4,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
