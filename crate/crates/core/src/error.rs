use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("negative exponent {0} in pow")]
    NegativePower(i64),
    #[error("cannot invert non-unit image of variable {0}")]
    LaurentUnsafe(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid JSON payload: {0}")]
    Json(String),
    #[error("invalid algebra type: {0}")]
    InvalidType(String),
    #[error("unsupported setting: {0}")]
    UnsupportedSetting(String),
    #[error("root {0} is not admissible here")]
    NotAdmissible(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("rank too small for evaluation: {0}")]
    RankTooSmall(String),
    #[error("groupoid generator not defined at point: {0}")]
    NotDefinedAt(String),
    #[error("empty group element list")]
    EmptyGroup,
    #[error("input ideal is not W-invariant: {0}")]
    NotWInvariant(String),
    #[error("level {q} out of range 1..={max}")]
    LevelOutOfRange { q: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("groebner budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) | Error::InvalidArgument(_) => 1,
            Error::BudgetExceeded(_) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
