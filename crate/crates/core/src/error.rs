use thiserror::Error;

/// Errors raised by the algebraic and combinatorial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent length {found} does not match ambient variable count {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operation requires a non-zero ideal")]
    ZeroIdeal,

    #[error("operation requires a proper ideal (got the unit ideal)")]
    UnitIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("operation is undefined on the void complex")]
    VoidComplex,

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("complex has dimension {0}, expected at most {1}")]
    DimensionTooLarge(i32, i32),

    #[error("complex has dimension {found}, expected exactly {expected}")]
    WrongDimension { expected: i32, found: i32 },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("graph has no edges")]
    Edgeless,

    #[error("{0} is not an independent set")]
    NotIndependent(String),

    #[error("{what}: estimated {estimate} exceeds the configured limit {limit}")]
    Guard {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },

    #[error("power exponent must be positive")]
    NonPositivePower,

    #[error("invalid field specification {0:?} (expected gf2, gf<p> with p prime, or q)")]
    InvalidField(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
