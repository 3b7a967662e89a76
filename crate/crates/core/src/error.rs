use thiserror::Error;

/// Errors raised by the lattice, cone, fan and Nash routines.
///
/// Vectors are carried as their display strings so the error type stays
/// independent of the scalar type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not pointed")]
    NonPointed,
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("point {0} does not lie in the cone")]
    NotInCone(String),
    #[error("cone has dimension {found}, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("point {0} is not in the support of the fan")]
    NotInSupport(String),
    #[error("ray set {0:?} does not form a face of the cone")]
    InvalidFace(Vec<String>),
    #[error("every admissible subdivision point is forbidden: {0}")]
    ForbiddenBlocksResolution(String),
    #[error("subdivision support does not match the base cone: {0}")]
    SupportMismatch(String),
    #[error("point {0} is minimal in the Y-region; no resolution avoids it")]
    MinimalPoint(String),
    #[error("avoidance construction failed for {ray} after {attempts} decompositions")]
    ConstructionFailed { ray: String, attempts: usize },
    #[error("Y would contain the zero face (not a proper subset)")]
    NotProper,
    #[error("Y is empty: the cone is smooth and no seed faces were given")]
    EmptyY,
    #[error("invalid Y face set: {0}")]
    InvalidYFaceSet(String),
    #[error("point {0} is not in the Y-region")]
    NotInRegion(String),
    #[error("level cap {cap} reached before enumeration terminated (needed {needed})")]
    BudgetExceeded { cap: u64, needed: u64 },
    #[error("function has no nonzero terms")]
    ZeroFunction,
    #[error("contact order must be at least 1")]
    InvalidOrder,
    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid stable toric complex: {0}")]
    InvalidComplex(String),
    #[error("component {index}: {source}")]
    Component { index: usize, source: Box<Error> },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
