use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CocycleError {
    #[error("non-finite value {0} in input")]
    NonFinite(f64),

    #[error("determinant drifted from 1 by {drift:e} (tolerance {tolerance:e})")]
    DetDrift { drift: f64, tolerance: f64 },

    #[error("degenerate matrix: second row norm {0:e} below margin")]
    Degenerate(f64),

    #[error("operation requires field {expected}, got {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("parameter modulus {0:e} is below the nonzero margin")]
    NearZeroParameter(f64),

    #[error("vector norm {0:e} is below the nonzero margin")]
    ZeroVector(f64),

    #[error("vectors are dependent: |det| = {det:e}, margin {margin:e}")]
    DependentPair { det: f64, margin: f64 },

    #[error("projective points coincide: distance {distance:e}, margin {margin:e}")]
    CoincidentPoints { distance: f64, margin: f64 },

    #[error("triple has no orientation: |c^2| = {0:e}")]
    DegenerateTriple(f64),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("function is not invariant under the stabilizer: residual {0:e}")]
    NotInvariant(f64),

    #[error("arity mismatch: expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(u64),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, CocycleError>;
