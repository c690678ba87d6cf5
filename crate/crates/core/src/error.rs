use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("invalid Galois exponent {exponent} modulo {order}")]
    InvalidGaloisExponent { order: usize, exponent: usize },
    #[error("value is not contained in the requested field: {0}")]
    NotInField(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("group of order {order} exceeds the brute-force bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group does not have a unique central involution ({found} found)")]
    NoComplexConjugation { found: usize },
    #[error("character table incomplete: sum of squared degrees {found} != group order {order}")]
    IncompleteTable { found: String, order: usize },
    #[error("element is not central")]
    NotCentral,
    #[error("character is not induced from the given subgroup: {0}")]
    NotInduced(String),
    #[error("malformed component map: {0}")]
    MalformedComponents(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid arithmetic input: {0}")]
    InvalidInput(String),
    #[error("missing L-value for character {0}")]
    MissingLValue(String),
    #[error("witness mismatch: {0}")]
    WitnessMismatch(String),
    #[error("denominator {denominator} is not invertible modulo {modulus}")]
    NonInvertibleDenominator { denominator: String, modulus: u64 },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("inconsistent reduction data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
