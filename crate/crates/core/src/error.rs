use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero polynomial has no root decomposition")]
    ZeroPolynomial,

    #[error("invalid classical parameters: {0}")]
    InvalidParameters(String),

    #[error("intersection number {name}_{index} = {value} is not positive")]
    NonPositiveIntersectionNumber {
        name: &'static str,
        index: usize,
        value: String,
    },

    #[error("parameters do not belong to family {expected}")]
    FamilyMismatch { expected: String },

    #[error("alpha = 0: the local graph is not strongly regular with the stated parameters")]
    AlphaZero,

    #[error("Neumaier hypothesis violated: s = {0} must be an integer below -1")]
    HypothesisViolated(String),

    #[error("diameter {d} with d = 0 (mod 6) is not covered by the elimination argument; use sweep instead")]
    DNotCovered { d: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("module is not thin")]
    NotThin,

    #[error("vector is not an eigenvector: {0}")]
    NotEigenvector(String),

    #[error("vector does not lie in the module: {0}")]
    NotInModule(String),

    #[error("module does not have endpoint 1")]
    NotEndpointOne,

    #[error("context is not bipartite (flat matrix is nonzero)")]
    NotBipartite,

    #[error("graph is bipartite; solve the native context directly")]
    Bipartite,

    #[error("checkpoint store: {0}")]
    Store(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
