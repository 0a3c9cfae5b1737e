//! Kernelizers, their reduction traces, and lifting of kernel solutions.
//!
//! Every graph change a kernelizer makes goes through [`ReductionStep::apply`],
//! so replaying a trace on the input reproduces the kernel exactly.

mod cluster;
mod split;
mod trivially_perfect;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph, Label, Vertex};
use crate::oracle;
use crate::problem::{Instance, ProblemKind};

pub use cluster::{kernelize_cluster, rule_cluster_simplicial};
pub use split::{
    build_modulator, clean_up_size, completion_edge_bound, kernelize_pseudo_split_completion,
    kernelize_pseudo_split_deletion, kernelize_split_completion, kernelize_split_deletion, kernelize_split_family,
    modulator_gate, vertex_bound, ModulatorPacking, SplitConfig, Thresholds,
};
pub use trivially_perfect::{candidate_endpoints, kernelize_tpc, rule_add_forced_edge, rule_remove_unobstructed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    /// Switch between a completion problem and its deletion counterpart.
    Complement,
    /// Cluster deletion / STC: cut off a cheap simplicial neighborhood.
    SimplicialNeighborhood,
    RemoveUnobstructedVertex,
    AddForcedEdge,
    MarkSimplicial,
    MarkFarFromClique,
    ForceCliqueVertex,
    DeleteMarkedEdges,
    MergeMarked,
    RemoveSafeVertex,
    CleanUp,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Complement => "complement",
            RuleId::SimplicialNeighborhood => "simplicial-neighborhood",
            RuleId::RemoveUnobstructedVertex => "remove-unobstructed-vertex",
            RuleId::AddForcedEdge => "add-forced-edge",
            RuleId::MarkSimplicial => "mark-simplicial",
            RuleId::MarkFarFromClique => "mark-far-from-clique",
            RuleId::ForceCliqueVertex => "force-clique-vertex",
            RuleId::DeleteMarkedEdges => "delete-marked-edges",
            RuleId::MergeMarked => "merge-marked",
            RuleId::RemoveSafeVertex => "remove-safe-vertex",
            RuleId::CleanUp => "clean-up",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One rule application, in labels.
///
/// Applied in the order: remove edges, remove vertices, add vertices, add
/// edges. `marked` lists vertices that become marked (split pipelines);
/// a clean-up step clears all marks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: RuleId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertex: Option<Label>,
    pub k_before: i64,
    pub k_after: i64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub removed_edges: Vec<(Label, Label)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub removed_vertices: Vec<Label>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub added_vertices: Vec<Label>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub added_edges: Vec<(Label, Label)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub marked: Vec<Label>,
}

impl ReductionStep {
    pub fn new(rule: RuleId, k: i64) -> Self {
        ReductionStep {
            rule,
            vertex: None,
            k_before: k,
            k_after: k,
            removed_edges: Vec::new(),
            removed_vertices: Vec::new(),
            added_vertices: Vec::new(),
            added_edges: Vec::new(),
            marked: Vec::new(),
        }
    }

    pub fn apply(&self, g: &mut Graph) -> Result<()> {
        if self.rule == RuleId::Complement {
            *g = g.complement();
            return Ok(());
        }
        let mut index = g.label_index();
        let find = |index: &HashMap<Label, Vertex>, l: Label| index.get(&l).copied().ok_or(Error::UnknownLabel(l));
        for &(a, b) in &self.removed_edges {
            let (u, v) = (find(&index, a)?, find(&index, b)?);
            if !g.remove_edge(u, v) {
                return Err(Error::Replay(format!("{} removes missing edge {{{a},{b}}}", self.rule)));
            }
        }
        if !self.removed_vertices.is_empty() {
            let vs = self.removed_vertices.iter().map(|&l| find(&index, l)).collect::<Result<Vec<_>>>()?;
            g.remove_vertices(&vs);
            index = g.label_index();
        }
        for &l in &self.added_vertices {
            if index.contains_key(&l) {
                return Err(Error::DuplicateLabel(l));
            }
            index.insert(l, g.add_vertex(l));
        }
        for &(a, b) in &self.added_edges {
            let (u, v) = (find(&index, a)?, find(&index, b)?);
            if u == v || !g.add_edge(u, v) {
                return Err(Error::Replay(format!("{} adds existing edge {{{a},{b}}}", self.rule)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    TrivialYes,
    TrivialNo,
    Kernel(Instance),
}

impl KernelOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            KernelOutcome::TrivialYes => "trivial-yes",
            KernelOutcome::TrivialNo => "trivial-no",
            KernelOutcome::Kernel(_) => "kernel",
        }
    }

    pub fn kernel(&self) -> Option<&Instance> {
        match self {
            KernelOutcome::Kernel(i) => Some(i),
            _ => None,
        }
    }
}

/// Result of one kernelization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernelization {
    pub input: Instance,
    pub outcome: KernelOutcome,
    pub trace: Vec<ReductionStep>,
    /// Input solution for trivial yes-instances, in labels.
    pub certificate: Option<Vec<(Label, Label)>>,
}

impl Kernelization {
    /// Vertex pairs the rules committed to: cut edges (cluster, STC), forced
    /// additions (TPC), deleted marked edges (split family).
    pub fn forced_modifications(&self) -> Vec<(Label, Label)> {
        let mut out: Vec<(Label, Label)> = self
            .trace
            .iter()
            .flat_map(|s| match s.rule {
                RuleId::SimplicialNeighborhood | RuleId::DeleteMarkedEdges => s.removed_edges.clone(),
                RuleId::AddForcedEdge => s.added_edges.clone(),
                _ => Vec::new(),
            })
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn rule_counts(&self) -> BTreeMap<RuleId, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.trace {
            *counts.entry(s.rule).or_insert(0) += 1;
        }
        counts
    }

    /// Replays the trace on the input graph.
    pub fn replay(&self) -> Result<Graph> {
        replay(&self.input.graph, &self.trace)
    }

    /// Maps a solution of the kernel (label pairs of the kernel graph) to a
    /// solution of the input. The result is always a valid solution; its
    /// size is at most `|kernel_solution| + k - k'` whenever the kernel
    /// solution fits the kernel budget.
    pub fn lift(&self, kernel_solution: &[(Label, Label)]) -> Result<Vec<(Label, Label)>> {
        let KernelOutcome::Kernel(kernel) = &self.outcome else {
            return Err(Error::Lift(format!("outcome is {}, not a kernel", self.outcome.tag())));
        };
        let pairs = to_pairs(&kernel.graph, kernel_solution)?;
        if !oracle::validate_solution(kernel.problem, &kernel.graph, &pairs) {
            return Err(Error::Lift("not a solution of the kernel".into()));
        }
        let out = match self.input.problem {
            ProblemKind::ClusterDeletion | ProblemKind::StrongTriadicClosure => {
                cluster::lift(&self.trace, kernel_solution)
            }
            ProblemKind::TriviallyPerfectCompletion => {
                trivially_perfect::lift(&self.input.graph, &self.trace, kernel_solution)?
            }
            _ => split::lift(&self.input, &self.trace, kernel_solution)?,
        };
        let check = to_pairs(&self.input.graph, &out)?;
        if !oracle::validate_solution(self.input.problem, &self.input.graph, &check) {
            return Err(Error::Lift("lifted set is not a solution of the input".into()));
        }
        Ok(out)
    }

    /// Input solution: the certificate for trivial yes-instances, or the
    /// lift of `kernel_solution` for kernels. `None` for trivial no.
    pub fn solution(&self, kernel_solution: &[(Label, Label)]) -> Result<Option<Vec<(Label, Label)>>> {
        match &self.outcome {
            KernelOutcome::TrivialYes => Ok(self.certificate.clone()),
            KernelOutcome::TrivialNo => Ok(None),
            KernelOutcome::Kernel(_) => self.lift(kernel_solution).map(Some),
        }
    }
}

/// Decides the input: trivial outcomes as they stand, kernels by the exact
/// solver. A yes answer carries an input solution (the certificate, or the
/// lifted kernel witness).
pub fn resolve(kz: &Kernelization) -> Result<Option<Vec<(Label, Label)>>> {
    match &kz.outcome {
        KernelOutcome::TrivialYes => Ok(kz.certificate.clone()),
        KernelOutcome::TrivialNo => Ok(None),
        KernelOutcome::Kernel(kernel) => {
            let cap = kernel.k.max(0) as usize;
            let r = oracle::solve_exact(kernel.problem, &kernel.graph, cap);
            if !r.within(kernel.k) {
                return Ok(None);
            }
            kz.lift(&to_labels(&kernel.graph, &r.witness)).map(Some)
        }
    }
}

/// Applies `trace` to a copy of `g`.
pub fn replay(g: &Graph, trace: &[ReductionStep]) -> Result<Graph> {
    let mut h = g.clone();
    for s in trace {
        s.apply(&mut h)?;
    }
    Ok(h)
}

/// Dispatches on the instance's problem.
pub fn kernelize(inst: &Instance) -> Result<Kernelization> {
    kernelize_with(inst, &SplitConfig::default())
}

/// As [`kernelize`], with explicit options for the split family.
pub fn kernelize_with(inst: &Instance, cfg: &SplitConfig) -> Result<Kernelization> {
    if inst.k < 0 {
        return Err(Error::NegativeBudget(inst.k));
    }
    match inst.problem {
        ProblemKind::ClusterDeletion | ProblemKind::StrongTriadicClosure => kernelize_cluster(inst),
        ProblemKind::TriviallyPerfectCompletion => kernelize_tpc(inst),
        _ => kernelize_split_family(inst, cfg),
    }
}

/// Vertex bound a kernel of budget `k` (the input budget) stays within.
pub fn size_bound(problem: ProblemKind, k: i64) -> usize {
    let k = k.max(0);
    match problem {
        ProblemKind::ClusterDeletion | ProblemKind::StrongTriadicClosure => (2 * k) as usize,
        ProblemKind::TriviallyPerfectCompletion => (2 * k * k + 2 * k) as usize,
        ProblemKind::SplitDeletion | ProblemKind::SplitCompletion => vertex_bound(false, k),
        ProblemKind::PseudoSplitDeletion | ProblemKind::PseudoSplitCompletion => vertex_bound(true, k),
    }
}

/// Label pairs to vertex pairs of `g`.
pub fn to_pairs(g: &Graph, pairs: &[(Label, Label)]) -> Result<Vec<EdgePair>> {
    let index = g.label_index();
    pairs
        .iter()
        .map(|&(a, b)| {
            let u = *index.get(&a).ok_or(Error::UnknownLabel(a))?;
            let v = *index.get(&b).ok_or(Error::UnknownLabel(b))?;
            EdgePair::new(u, v)
        })
        .collect()
}

/// Vertex pairs of `g` to sorted label pairs.
pub fn to_labels(g: &Graph, pairs: &[EdgePair]) -> Vec<(Label, Label)> {
    let mut out: Vec<(Label, Label)> = pairs
        .iter()
        .map(|e| {
            let (a, b) = (g.label(e.u()), g.label(e.v()));
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

fn label_pair(g: &Graph, u: Vertex, v: Vertex) -> (Label, Label) {
    let (a, b) = (g.label(u), g.label(v));
    (a.min(b), a.max(b))
}

fn check_problem(inst: &Instance, allowed: &[ProblemKind], expected: &'static str) -> Result<()> {
    if allowed.contains(&inst.problem) {
        Ok(())
    } else {
        Err(Error::ProblemMismatch { expected, found: inst.problem })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;

    #[test]
    fn step_apply_order_and_errors() {
        let mut g = families::path(3);
        let mut s = ReductionStep::new(RuleId::CleanUp, 1);
        s.removed_edges = vec![(0, 1)];
        s.removed_vertices = vec![0];
        s.added_vertices = vec![7];
        s.added_edges = vec![(7, 2)];
        s.apply(&mut g).unwrap();
        assert_eq!(g.labels(), &[1, 2, 7]);
        assert_eq!(g.m(), 2);
        assert!(s.apply(&mut g).is_err());
    }

    #[test]
    fn rule_names_match_serde() {
        for r in [RuleId::Complement, RuleId::MergeMarked, RuleId::RemoveSafeVertex] {
            let s = ReductionStep::new(r, 0);
            assert_eq!(s.rule.to_string(), r.name());
        }
    }

    #[test]
    fn negative_budget_is_rejected() {
        let inst = Instance::new(ProblemKind::ClusterDeletion, families::path(3), -1);
        assert!(kernelize(&inst).is_err());
    }
}
