use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input to an operation: wrong tuple length, index out of range,
    /// mismatched permutation size and similar shape errors.
    #[error("structural error: {0}")]
    Structure(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("operands live in different generator sets or truncations")]
    AlgebraMismatch,
    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("variance mismatch: {0}")]
    Variance(String),
    #[error("no invariants exist: sum m_i b_i = {primal} but sum m_i t_i = {dual}")]
    Unbalanced { primal: usize, dual: usize },
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("not degree preserving: {0}")]
    NotDegreePreserving(String),
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("point is not in the identity component: {0}")]
    NotInIdentityComponent(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
