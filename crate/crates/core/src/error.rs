use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension {dim} exceeds the double-description cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("subspace basis is linearly dependent")]
    BasisDependent,
    #[error("point is not in the set")]
    NotInSet,
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("derivative of order {order} requested on a non-polynomial map (cap {cap})")]
    OrderCap { order: usize, cap: usize },
    #[error("exact value unavailable: {0}")]
    Inexact(String),
    #[error("operation needs a polyhedral Gamma; this instance uses an analytic set oracle")]
    AnalyticGamma,
    #[error("instance has no objective")]
    MissingObjective,
    #[error("AssumptionNotGuaranteed: multi-index {0} is not admissible for this set")]
    AssumptionNotGuaranteed(String),
    #[error("no feasible sample found near the reference point")]
    EmptyPool,
    #[error("reference point is infeasible: F(x) is not in Gamma")]
    InfeasiblePoint,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
