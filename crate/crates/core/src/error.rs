use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SprError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),
    #[error("degenerate span: {0}")]
    DegenerateSpan(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("certificate carries no grid lower bound")]
    NotCertified,
    #[error("surrogate quality: {0}")]
    SurrogateQuality(String),
    #[error("undersampled: {0}")]
    Undersampled(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inputs must be unit vectors: {0}")]
    NonUnit(String),
    #[error("net is not norming: {0}")]
    Norming(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, SprError>;
