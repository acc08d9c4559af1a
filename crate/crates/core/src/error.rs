use thiserror::Error;

/// Failure modes shared by every solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("quadrature did not reach the requested accuracy: {0}")]
    Accuracy(String),
    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),
    #[error("point lies in a transition band: {0}")]
    Transition(String),
    #[error("pole of the model: {0}")]
    ModelPole(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("peak may jump: {0}")]
    PeakJump(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
