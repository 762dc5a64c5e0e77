use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::tensor::MAX_DIM)]
    InvalidDimension(usize),

    #[error("coefficient array has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("shape mismatch: (dim {}, degree {}) vs (dim {}, degree {})", left.0, left.1, right.0, right.1)]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("composition slot {slot} is out of range 0..={max}")]
    SlotOutOfRange { slot: usize, max: usize },

    #[error("operation of degree {0} is not allowed here")]
    DegreeNotAllowed(usize),

    #[error("angular frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),

    #[error("auxiliary functions are undefined at zero energy")]
    ZeroEnergy,

    #[error("phase {phase:.6} is within {margin} of the branch cut at pi")]
    BranchCut { phase: f64, margin: f64 },

    #[error("structure constants are not anti-commutative (residual {0:e})")]
    NotAntiCommutative(f64),

    #[error("initial momentum must be positive, got {0}")]
    NonPositiveMomentum(f64),

    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),

    #[error("isomorphism matrix is undefined at q = 0")]
    SingularPosition,

    #[error("unknown algebra '{0}' (expected so3, heisenberg or sl2)")]
    UnknownAlgebra(String),

    #[error("invalid integration config: {0}")]
    InvalidConfig(String),

    #[error("integration produced a non-finite state at t = {0}")]
    Diverged(f64),

    #[error("invalid algebra file: {0}")]
    AlgebraFile(String),
}
