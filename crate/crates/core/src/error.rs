use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalars belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("no primitive {order}-th root of unity exists in characteristic {characteristic}")]
    NoRootOfUnity { characteristic: u64, order: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: i64, rank: usize },

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("braid is not pure: induced permutation {0:?}")]
    NotPure(Vec<usize>),

    #[error("invalid multiplicities: {0}")]
    InvalidMultiplicities(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("map to Z/{order} is not surjective (image generated by {gcd})")]
    NotSurjective { order: u64, gcd: u64 },

    #[error("characteristic {characteristic} divides {order}")]
    CharacteristicDividesOrder { characteristic: u64, order: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("torsion outside the expected prime envelope {envelope:?}: found primes {found:?}")]
    TorsionOutsideEnvelope { envelope: Vec<u64>, found: Vec<u64> },
}
