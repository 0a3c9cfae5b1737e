//! Kernelization for edge modification problems: cluster edge deletion,
//! strong triadic closure, trivially perfect completion, and split and
//! pseudo-split edge deletion/completion.
//!
//! The entry point is [`kernel::kernelize`]. The [`oracle`] module holds the
//! exact branching solvers and recognizers used to check kernels.

pub mod error;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod obstruction;
pub mod oracle;
pub mod problem;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgePair, Graph, Label, Vertex};
pub use kernel::{kernelize, KernelOutcome, Kernelization, ReductionStep, RuleId};
pub use problem::{GraphClass, Instance, ProblemKind};
