use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("presentation dimension must be positive")]
    ZeroDimension,
    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },
    #[error("semigroup is not combinatorially finite: S meets -S outside 0")]
    NotCombinatoriallyFinite,
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree of the divisor does not precede the target degree in the semigroup order")]
    DegreeMismatch,
    #[error("element is not homogeneous with respect to the semigroup grading")]
    NotHomogeneous,
    #[error("binomial is not a nonzero element of the toric ideal")]
    NotInIdeal,
    #[error("vector is not a syzygy: {0}")]
    NotASyzygy(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("vertex set is not a face of the complex")]
    NotAFace,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("cycle lift failed: {0}")]
    LiftFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
