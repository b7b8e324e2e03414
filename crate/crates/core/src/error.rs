use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid generalized graph: {0}")]
    InvalidGeneralizedGraph(String),
    #[error("matrix is reducible; the structure set may be infinite")]
    ReducibleMatrix,
    #[error("not a Z-matrix: off-diagonal entry ({0}, {1}) is positive")]
    NotZMatrix(usize, usize),
    #[error("kernel mismatch: the given vector is not annihilated by the matrix")]
    KernelMismatch,
    #[error("not an arithmetical structure: {0}")]
    NotAStructure(String),
    #[error("unsupported family for certified enumeration: {0}")]
    UnsupportedFamily(String),
    #[error("x = q.r is zero")]
    ZeroX,
    #[error("p and q must be strictly positive")]
    NonPositivePQ,
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("divisibility violation: {0}")]
    DivisibilityViolation(String),
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),
    #[error("affine residue L(C_n, d) r is not a constant vector")]
    AffineResidueNotConstant,
    #[error("vertex set is not a clique: {0}")]
    NotAClique(String),
    #[error("lattice basis expression failed: {0}")]
    BasisExpressionFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("file error: {0}")]
    File(String),
    #[error("unknown table: {0}")]
    UnknownTable(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}
