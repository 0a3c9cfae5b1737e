use thiserror::Error;

use crate::problem::ProblemKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("label {0} used twice")]
    DuplicateLabel(usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("unknown label {0}")]
    UnknownLabel(usize),
    #[error("{found} instance passed to a kernelizer for {expected}")]
    ProblemMismatch { expected: &'static str, found: ProblemKind },
    #[error("negative budget {0}")]
    NegativeBudget(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("unknown figure {0:?}")]
    UnknownFigure(String),
    #[error("cannot lift solution: {0}")]
    Lift(String),
    #[error("trace replay failed: {0}")]
    Replay(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
