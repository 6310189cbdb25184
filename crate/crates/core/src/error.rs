use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("triangle entries must be positive, got {0:?}")]
    NonPositiveEntry([i64; 3]),
    #[error("vertex index must be 1, 2 or 3, got {0}")]
    InvalidVertex(usize),
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("element is not fixed by complex conjugation")]
    NotReal,
    #[error("corner walk around vertex {vertex} of copy {copy} did not close")]
    InconsistentGluing { copy: usize, vertex: usize },
    #[error("surface has no singularities")]
    NoSingularTarget,
    #[error("invalid puncture set: {0}")]
    InvalidPuncture(String),
    #[error("angles do not form a triangle: {0}")]
    InvalidAngles(String),
    #[error("fingerprint at vertex {vertex} produced {gaps} distinct gaps")]
    InternalTrichotomyViolation { vertex: usize, gaps: usize },
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(u64, u64),
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("cover is not a translation map: {0}")]
    MapInconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
