use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a prime field, got {0}")]
    FieldNotFinite(FieldSpec),

    #[error("enumeration of {size} candidates exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },

    #[error("change-of-basis matrix is singular")]
    SingularTransform,

    #[error("weight vector is not a nonzero algebra homomorphism")]
    WeightInvalid,

    #[error("partial weight sum vanishes at basis index {index} in characteristic {characteristic}")]
    CharacteristicObstruction { index: usize, characteristic: u64 },

    #[error("algebra carries no bowtie provenance")]
    NotABowtie,

    #[error("bowtie provenance does not match the structure constants")]
    InvalidProvenance,

    #[error("input element is not idempotent")]
    NotIdempotentInput,

    #[error("input element does not have weight one")]
    WeightNotOne,

    #[error("map is not a weight-preserving isomorphism")]
    NotWeightPreserving,

    #[error("factors must be commutative and unital")]
    FactorsNotCommutativeUnital,

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("unknown proposition id {0:?}")]
    UnknownProposition(String),

    #[error("duplicate structure constant triple ({0}, {1}, {2})")]
    DuplicateTriple(usize, usize, usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
