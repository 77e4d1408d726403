use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("index out of range: {0}")]
    InvalidIndex(String),
    #[error("element is not a relation (nonzero image in A): {0}")]
    NotARelation(String),
    #[error("bracket is not a cycle: {0}")]
    NonCycle(String),
    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),
    #[error("series is not of the required shape: {0}")]
    BadSeries(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("coefficient is not p-local: {0}")]
    NotPLocal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
