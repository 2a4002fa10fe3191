use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },

    #[error("degree {found} is too low, need at least {required}")]
    DegreeTooLow { found: u32, required: u32 },

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("odd degree {0} has no Gram representation")]
    OddDegree(u32),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown builtin object `{0}`")]
    UnknownBuiltin(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("not representable: {0}")]
    NotRepresentable(String),

    #[error("form is nonzero at the given point (value {0})")]
    NonzeroAtPoint(String),

    #[error("alpha_5 = {found} is not at the lower bound {bound}")]
    NotAtBound { found: String, bound: String },

    #[error("quadratic discriminant is not positive ({0})")]
    DiscriminantNotPositive(String),

    #[error("division by zero while back-substituting the zero (a*x2 - b*x1 = 0)")]
    DegenerateDivision,

    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("singular linear system")]
    Singular,
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
