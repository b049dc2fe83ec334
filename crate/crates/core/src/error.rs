use crate::report::CheckReport;

#[derive(Debug, thiserror::Error)]
pub enum AdcError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("target of the first map is not the source of the second")]
    SourceTargetMismatch,
    #[error("the two maps have different sources")]
    SourceMismatch,
    #[error("colimit is not based: {0}")]
    NonBasedPushout(String),
    #[error("bad disk dimensions: {0}")]
    BadDims(String),
    #[error("bad basepoint: {0}")]
    BadBasepoint(String),
    #[error("complex has no generators")]
    Empty,
    #[error("chain has degree zero")]
    DegreeZero,
    #[error("negative coefficient in atom descent at generator {0}")]
    NegativeEntry(String),
    #[error("level {level} out of range for a cell of dimension {dim}")]
    BadLevel { level: usize, dim: usize },
    #[error("cells are not composable: {0}")]
    NotComposable(String),
    #[error("composite table is invalid: {0}")]
    InvalidResult(String),
    #[error("unsupported theta spec: {0}")]
    UnsupportedSpec(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed: {}", .0.summary())]
    Validation(CheckReport),
    #[error("complex too large: {count} generators exceeds the limit {limit}")]
    TooLarge { count: usize, limit: usize },
}

impl AdcError {
    pub fn code(&self) -> &'static str {
        match self {
            AdcError::Malformed(_) => "MALFORMED",
            AdcError::DegreeMismatch(_) => "DEGREE_MISMATCH",
            AdcError::SourceTargetMismatch => "SOURCE_TARGET_MISMATCH",
            AdcError::SourceMismatch => "SOURCE_MISMATCH",
            AdcError::NonBasedPushout(_) => "NON_BASED_PUSHOUT",
            AdcError::BadDims(_) => "BAD_DIMS",
            AdcError::BadBasepoint(_) => "BAD_BASEPOINT",
            AdcError::Empty => "EMPTY",
            AdcError::DegreeZero => "DEGREE_ZERO",
            AdcError::NegativeEntry(_) => "NEGATIVE_ENTRY",
            AdcError::BadLevel { .. } => "BAD_LEVEL",
            AdcError::NotComposable(_) => "NOT_COMPOSABLE",
            AdcError::InvalidResult(_) => "INVALID_RESULT",
            AdcError::UnsupportedSpec(_) => "UNSUPPORTED_SPEC",
            AdcError::Parse { .. } => "PARSE_ERROR",
            AdcError::Validation(_) => "VALIDATION_ERROR",
            AdcError::TooLarge { .. } => "TOO_LARGE",
        }
    }
}

pub type Result<T> = std::result::Result<T, AdcError>;
