use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// The edge modification problems handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    #[serde(rename = "cluster-del")]
    ClusterDeletion,
    #[serde(rename = "stc")]
    StrongTriadicClosure,
    #[serde(rename = "tpc")]
    TriviallyPerfectCompletion,
    #[serde(rename = "split-del")]
    SplitDeletion,
    #[serde(rename = "split-comp")]
    SplitCompletion,
    #[serde(rename = "pseudo-del")]
    PseudoSplitDeletion,
    #[serde(rename = "pseudo-comp")]
    PseudoSplitCompletion,
}

/// Graph classes with a recognizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    Cluster,
    TriviallyPerfect,
    Split,
    PseudoSplit,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 7] = [
        ProblemKind::ClusterDeletion,
        ProblemKind::StrongTriadicClosure,
        ProblemKind::TriviallyPerfectCompletion,
        ProblemKind::SplitDeletion,
        ProblemKind::SplitCompletion,
        ProblemKind::PseudoSplitDeletion,
        ProblemKind::PseudoSplitCompletion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::ClusterDeletion => "cluster-del",
            ProblemKind::StrongTriadicClosure => "stc",
            ProblemKind::TriviallyPerfectCompletion => "tpc",
            ProblemKind::SplitDeletion => "split-del",
            ProblemKind::SplitCompletion => "split-comp",
            ProblemKind::PseudoSplitDeletion => "pseudo-del",
            ProblemKind::PseudoSplitCompletion => "pseudo-comp",
        }
    }

    /// True for problems whose solutions add edges.
    pub fn is_completion(self) -> bool {
        matches!(
            self,
            ProblemKind::TriviallyPerfectCompletion | ProblemKind::SplitCompletion | ProblemKind::PseudoSplitCompletion
        )
    }

    /// Target class; strong triadic closure has none (its solutions are checked directly).
    pub fn target_class(self) -> Option<GraphClass> {
        match self {
            ProblemKind::ClusterDeletion => Some(GraphClass::Cluster),
            ProblemKind::StrongTriadicClosure => None,
            ProblemKind::TriviallyPerfectCompletion => Some(GraphClass::TriviallyPerfect),
            ProblemKind::SplitDeletion | ProblemKind::SplitCompletion => Some(GraphClass::Split),
            ProblemKind::PseudoSplitDeletion | ProblemKind::PseudoSplitCompletion => Some(GraphClass::PseudoSplit),
        }
    }

    /// The deletion problem a completion problem reduces to by complementation.
    pub fn complement_problem(self) -> Option<ProblemKind> {
        match self {
            ProblemKind::SplitCompletion => Some(ProblemKind::SplitDeletion),
            ProblemKind::PseudoSplitCompletion => Some(ProblemKind::PseudoSplitDeletion),
            _ => None,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownProblem(pub String);

impl fmt::Display for UnknownProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown problem {:?} (expected one of: cluster-del, stc, tpc, split-del, split-comp, pseudo-del, pseudo-comp)",
            self.0
        )
    }
}

impl std::error::Error for UnknownProblem {}

impl FromStr for ProblemKind {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemKind::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| UnknownProblem(s.to_string()))
    }
}

/// A graph, a modification budget and the problem being asked.
///
/// The budget is signed: a pipeline may drive it below zero, which always
/// means a no-instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: i64,
    pub problem: ProblemKind,
}

impl Instance {
    pub fn new(problem: ProblemKind, graph: Graph, k: i64) -> Self {
        Instance { graph, k, problem }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for p in ProblemKind::ALL {
            assert_eq!(p.name().parse::<ProblemKind>().unwrap(), p);
        }
        assert!("cluster".parse::<ProblemKind>().is_err());
    }
}
