use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not invertible over the ring")]
    NotInvertible,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("map does not intertwine the endomorphisms")]
    NotIntertwining,
    #[error("module is not a near-projection")]
    NotNearProjection,
    #[error("morphism source/target mismatch")]
    SourceTargetMismatch,
    #[error("invalid presentation: augmentation is not invertible")]
    InvalidPresentation,
    #[error("singular form: {0}")]
    SingularForm(String),
    #[error("form is not eta-symmetric")]
    NotSymmetric,
    #[error("pairing is not an isomorphism of Blanchfield modules")]
    NotNonsingularForm,
    #[error("operation requires eta = +1")]
    WrongEta,
    #[error("degree cap {cap} exceeded (span {span})")]
    DegreeCapExceeded { cap: i64, span: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
