use thiserror::Error;

/// Reasons a comodule algebra fails to be Hopf–Galois.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisFailure {
    ShapeMismatch { balanced_dim: usize, target_dim: usize },
    RankDeficient { rank: usize, target_dim: usize },
}

impl std::fmt::Display for GaloisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaloisFailure::ShapeMismatch { balanced_dim, target_dim } => {
                write!(f, "shape mismatch: dim P⊗_B P = {balanced_dim}, dim P⊗H = {target_dim}")
            }
            GaloisFailure::RankDeficient { rank, target_dim } => {
                write!(f, "rank deficient: rank {rank} < {target_dim}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}: not convolution invertible")]
    NotInvertible(String),
    #[error("invalid cotwist: {0}")]
    InvalidCotwist(String),
    #[error("coinvariants are not closed under the product")]
    NotSubalgebra,
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid gauge map: {0}")]
    InvalidGauge(String),
    #[error("invalid cocycle pair: {0}")]
    InvalidPair(String),
    #[error("cleaving map: {0}")]
    NotEquivariant(String),
    #[error("{0} does not take values in the coinvariants")]
    NotCoinvariantValued(String),
    #[error("lambda is not well defined on the balanced tensor product")]
    LambdaNotWellDefined,
    #[error("lambda is not invertible")]
    LambdaNotInvertible,
    #[error("cocycle pair is not of associative type")]
    NotAssociativeType,
    #[error("invalid algebroid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("not Hopf-Galois: {0}")]
    NotGalois(GaloisFailure),
    #[error("braiding does not preserve the carrier")]
    CarrierNotPreserved,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("axiom failed: {0}")]
    AxiomFailed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
