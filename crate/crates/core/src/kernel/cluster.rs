//! 2k-vertex kernel for cluster edge deletion and strong triadic closure.

use crate::error::Result;
use crate::graph::Label;
use crate::oracle;
use crate::problem::{GraphClass, Instance, ProblemKind};

use super::{check_problem, label_pair, KernelOutcome, Kernelization, ReductionStep, RuleId};

const PROBLEMS: &[ProblemKind] = &[ProblemKind::ClusterDeletion, ProblemKind::StrongTriadicClosure];
const EXPECTED: &str = "cluster-del or stc";

/// Lowest-label simplicial `v` with `d(N[v]) <= deg(v)`: removes `N[v]`
/// and pays for the edges leaving it.
pub fn rule_cluster_simplicial(inst: &Instance) -> Result<Option<(Instance, ReductionStep)>> {
    check_problem(inst, PROBLEMS, EXPECTED)?;
    let g = &inst.graph;
    for v in g.by_label() {
        if !g.is_simplicial(v)? {
            continue;
        }
        let closed = g.closed_neighborhood(v);
        let d = g.boundary_degree_of(&closed);
        if d > g.degree(v) {
            continue;
        }
        let mut step = ReductionStep::new(RuleId::SimplicialNeighborhood, inst.k);
        step.vertex = Some(g.label(v));
        step.k_after = inst.k - d as i64;
        for u in closed.ones() {
            for &w in g.neighbors(u) {
                if !closed.contains(w) {
                    step.removed_edges.push(label_pair(g, u, w));
                }
            }
        }
        step.removed_edges.sort_unstable();
        step.removed_vertices = closed.ones().map(|u| g.label(u)).collect();
        step.removed_vertices.sort_unstable();
        let mut graph = g.clone();
        step.apply(&mut graph)?;
        return Ok(Some((Instance::new(inst.problem, graph, step.k_after), step)));
    }
    Ok(None)
}

pub fn kernelize_cluster(inst: &Instance) -> Result<Kernelization> {
    check_problem(inst, PROBLEMS, EXPECTED)?;
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    while let Some((next, step)) = rule_cluster_simplicial(&cur)? {
        trace.push(step);
        cur = next;
    }
    let mut certificate = None;
    let outcome = if cur.k < 0 {
        KernelOutcome::TrivialNo
    } else if oracle::is_member(GraphClass::Cluster, &cur.graph) {
        certificate = Some(lift(&trace, &[]));
        KernelOutcome::TrivialYes
    } else if cur.graph.n() as i64 > 2 * cur.k {
        KernelOutcome::TrivialNo
    } else {
        KernelOutcome::Kernel(cur)
    };
    Ok(Kernelization { input: inst.clone(), outcome, trace, certificate })
}

/// Kernel solution plus every cut edge. For STC the cut edges are the
/// weak edges.
pub(super) fn lift(trace: &[ReductionStep], kernel_solution: &[(Label, Label)]) -> Vec<(Label, Label)> {
    let mut out: Vec<(Label, Label)> = kernel_solution.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for s in trace {
        out.extend(s.removed_edges.iter().copied());
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{families, paper_figure};
    use crate::graph::Graph;

    fn inst(p: ProblemKind, g: Graph, k: i64) -> Instance {
        Instance::new(p, g, k)
    }

    #[test]
    fn rule_examples() {
        let (next, step) =
            rule_cluster_simplicial(&inst(ProblemKind::ClusterDeletion, families::complete(3), 5)).unwrap().unwrap();
        assert_eq!(step.vertex, Some(0));
        assert_eq!(next.graph.n(), 0);
        assert_eq!(next.k, 5);

        let (next, step) =
            rule_cluster_simplicial(&inst(ProblemKind::ClusterDeletion, families::path(3), 1)).unwrap().unwrap();
        assert_eq!(step.removed_vertices, vec![0, 1]);
        assert_eq!(step.removed_edges, vec![(1, 2)]);
        assert_eq!(next.k, 0);
        assert_eq!(next.graph.labels(), &[2]);

        assert!(rule_cluster_simplicial(&inst(ProblemKind::ClusterDeletion, families::star(3), 3)).unwrap().is_none());
    }

    #[test]
    fn kernelize_examples() {
        let out = |p, g, k| kernelize_cluster(&inst(p, g, k)).unwrap().outcome;
        assert_eq!(out(ProblemKind::ClusterDeletion, families::complete(3), 0), KernelOutcome::TrivialYes);
        assert_eq!(out(ProblemKind::ClusterDeletion, families::path(3), 0), KernelOutcome::TrivialNo);
        assert_eq!(out(ProblemKind::StrongTriadicClosure, families::path(3), 1), KernelOutcome::TrivialYes);
    }

    #[test]
    fn wrong_problem_is_an_error() {
        assert!(kernelize_cluster(&inst(ProblemKind::SplitDeletion, families::path(3), 1)).is_err());
    }

    #[test]
    fn fig3_has_no_cheap_simplicial_vertex() {
        let g = paper_figure("fig3").unwrap();
        let k = kernelize_cluster(&inst(ProblemKind::ClusterDeletion, g, 11)).unwrap();
        assert!(k.trace.is_empty());
        assert!(matches!(k.outcome, KernelOutcome::Kernel(_)));
    }
}
