use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("incompatible series: {0}")]
    SpaceMismatch(String),

    #[error("exponent {exponent} is not on the grid {grid:?}")]
    OffGrid { exponent: String, grid: Vec<u64> },

    /// The lowest term of a truncated object cannot be certified: nothing is
    /// known below the truncation bound.
    #[error("value is indeterminate below the truncation bound {0}")]
    IndeterminateBelowBound(String),

    #[error("insufficient precision: required order {required}, available {available}")]
    InsufficientPrecision { required: String, available: String },

    #[error("valuation {0} is not supported for this coefficient")]
    UnsupportedValuation(String),

    #[error("singular exponent matrix")]
    SingularExponentMatrix,

    #[error("transformed exponent {0} is negative or fractional")]
    OffGridResult(String),

    #[error("weight vector is not positive after the transformation: {0}")]
    IncompatibleWeight(String),

    #[error("invalid transform spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("semantic error at {line}:{col}: {message}")]
    Semantic {
        line: usize,
        col: usize,
        message: String,
    },
}

impl Error {
    /// Precision problems map to the "indeterminate" outcome of the CLI.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::IndeterminateBelowBound(_) | Error::InsufficientPrecision { .. }
        )
    }
}
