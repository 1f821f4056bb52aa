use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("extension modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("extension modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("polynomial of degree {0} exceeds the factorization cap")]
    DegreeTooLarge(usize),
    #[error("CRT moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("field is not a simple extension of the polynomial's field")]
    NotAnExtension,
    #[error("matrix is not square")]
    NotSquare,
    #[error("size mismatch")]
    SizeMismatch,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("derivative of the squarefree part is not a unit modulo the minimal polynomial")]
    NonSquarefreeDerivativeUnit,
    #[error("instance too large for exhaustive enumeration")]
    TooLarge,
    #[error("permutation is odd")]
    OddPermutation,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
