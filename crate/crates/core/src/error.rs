use thiserror::Error;

/// Errors raised by the algebra, chain and homotopy layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("zero multivector has no bidegree")]
    ZeroInput,

    #[error("multivector is not homogeneous in both |alpha| and |beta|")]
    MixedDegree,

    #[error("coordinate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("empty factor list")]
    EmptyWord,

    #[error("expected arity {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("word `{0}` is not in the basis")]
    WordOutsideBasis(String),

    #[error("boundary left the weight block: `{0}`")]
    WeightEscape(String),

    #[error("chain is not homogeneous of a single weight signature")]
    NotHomogeneous,

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("expected a bivector (|alpha| = 2)")]
    NotBivector,

    #[error("structured descent did not terminate within {0} steps")]
    DescentDidNotTerminate(usize),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
