use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("form is not closed")]
    NotClosed,
    #[error("inseparability certificate failed for target variable `{0}`")]
    CertificateFailed(String),
    #[error("extension is not given by adapted data")]
    NotAdapted,
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("element is not a p-basis variable: {0}")]
    NotBasisElement(String),
    #[error("quadratic form is singular")]
    Singular,
    #[error("not in the subfield: {0}")]
    NotInSubfield(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
