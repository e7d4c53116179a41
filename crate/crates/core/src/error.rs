use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("not antisymmetric at entry ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("unsupported form degree {degree} for {op}")]
    Degree { op: &'static str, degree: usize },

    #[error("bivector is not Poisson: {0}")]
    NotPoisson(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("non-finite state after last valid time t = {last_time}")]
    NonFinite { last_time: f64 },

    #[error("scenario `{scenario}`: {message}")]
    Scenario { scenario: String, message: String },

    #[error("scenario `{scenario}`: invariant fails for `{item}`: {message}")]
    Invariant {
        scenario: String,
        item: String,
        message: String,
    },

    #[error("json: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
