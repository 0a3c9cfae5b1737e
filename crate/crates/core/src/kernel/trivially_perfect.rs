//! (2k²+2k)-vertex kernel for trivially perfect completion.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::obstruction::{self, TRIVIALLY_PERFECT};
use crate::oracle;
use crate::problem::{GraphClass, Instance, ProblemKind};

use super::{check_problem, label_pair, to_labels, to_pairs, KernelOutcome, Kernelization, ReductionStep, RuleId};

const PROBLEMS: &[ProblemKind] = &[ProblemKind::TriviallyPerfectCompletion];
const EXPECTED: &str = "tpc";

fn finish(inst: &Instance, step: ReductionStep) -> Result<Option<(Instance, ReductionStep)>> {
    let mut graph = inst.graph.clone();
    step.apply(&mut graph)?;
    Ok(Some((Instance::new(inst.problem, graph, step.k_after), step)))
}

/// Removes the lowest-label vertex lying on no induced P4 or C4.
pub fn rule_remove_unobstructed(inst: &Instance) -> Result<Option<(Instance, ReductionStep)>> {
    check_problem(inst, PROBLEMS, EXPECTED)?;
    let g = &inst.graph;
    let covered = obstruction::obstructed_vertices(g, TRIVIALLY_PERFECT, None);
    let Some(v) = g.by_label().into_iter().find(|&v| !covered.contains(v)) else { return Ok(None) };
    let mut step = ReductionStep::new(RuleId::RemoveUnobstructedVertex, inst.k);
    step.vertex = Some(g.label(v));
    step.removed_vertices = vec![g.label(v)];
    finish(inst, step)
}

/// Adds the lowest candidate edge lying on at least `k+1` P4s and C4s.
pub fn rule_add_forced_edge(inst: &Instance) -> Result<Option<(Instance, ReductionStep)>> {
    check_problem(inst, PROBLEMS, EXPECTED)?;
    let g = &inst.graph;
    let threshold = (inst.k + 1).max(0) as usize;
    let best = obstruction::candidate_counts(g)
        .into_iter()
        .filter(|&(_, c)| c >= threshold)
        .map(|(e, _)| label_pair(g, e.u(), e.v()))
        .min();
    let Some(pair) = best else { return Ok(None) };
    let mut step = ReductionStep::new(RuleId::AddForcedEdge, inst.k);
    step.k_after = inst.k - 1;
    step.added_edges = vec![pair];
    finish(inst, step)
}

pub fn kernelize_tpc(inst: &Instance) -> Result<Kernelization> {
    check_problem(inst, PROBLEMS, EXPECTED)?;
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    'outer: loop {
        while let Some((next, step)) = rule_add_forced_edge(&cur)? {
            trace.push(step);
            cur = next;
            if cur.k < 0 {
                break 'outer;
            }
        }
        let mut removed = false;
        while let Some((next, step)) = rule_remove_unobstructed(&cur)? {
            trace.push(step);
            cur = next;
            removed = true;
        }
        if !removed {
            break;
        }
    }
    let k = cur.k;
    let mut certificate = None;
    let outcome = if k < 0 {
        KernelOutcome::TrivialNo
    } else if oracle::is_member(GraphClass::TriviallyPerfect, &cur.graph) {
        certificate = Some(lift(&inst.graph, &trace, &[])?);
        KernelOutcome::TrivialYes
    } else if cur.graph.n() as i64 > 2 * k * k + 2 * k {
        KernelOutcome::TrivialNo
    } else {
        KernelOutcome::Kernel(cur)
    };
    Ok(Kernelization { input: inst.clone(), outcome, trace, certificate })
}

/// Walks the trace backwards. Before re-inserting a removed vertex the
/// current completion is made minimal; a minimal completion of `G - v`
/// also completes `G` when `v` lies on no P4 or C4. Forced edges are
/// simply added back.
pub(super) fn lift(
    input: &Graph,
    trace: &[ReductionStep],
    kernel_solution: &[(Label, Label)],
) -> Result<Vec<(Label, Label)>> {
    let mut states = Vec::with_capacity(trace.len() + 1);
    let mut g = input.clone();
    for s in trace {
        states.push(g.clone());
        s.apply(&mut g)?;
    }
    let mut sol: Vec<(Label, Label)> = kernel_solution.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut after = g;
    for (s, before) in trace.iter().zip(states).rev() {
        match s.rule {
            RuleId::AddForcedEdge => sol.extend(s.added_edges.iter().copied()),
            RuleId::RemoveUnobstructedVertex => {
                let pairs = to_pairs(&after, &sol)?;
                let minimal = oracle::minimal_tp_completion(&after, &pairs)?;
                let kept: Vec<_> = minimal.edges().filter(|e| !after.has_edge(e.u(), e.v())).collect();
                sol = to_labels(&after, &kept);
            }
            r => return Err(Error::Lift(format!("unexpected rule {r} in a trivially perfect trace"))),
        }
        after = before;
    }
    sol.sort_unstable();
    sol.dedup();
    Ok(sol)
}

/// Number of distinct endpoints of candidate edges; the kernel bound
/// argument caps it at 2(k²+k) for yes-instances.
pub fn candidate_endpoints(g: &Graph) -> usize {
    let mut seen = FixedBitSet::with_capacity(g.n());
    for e in obstruction::candidate_counts(g).keys() {
        seen.insert(e.u());
        seen.insert(e.v());
    }
    seen.count_ones(..)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;

    fn tpc(g: Graph, k: i64) -> Instance {
        Instance::new(ProblemKind::TriviallyPerfectCompletion, g, k)
    }

    fn double_p4() -> Graph {
        // u=0, a=1, v=2, b1=3, b2=4
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn remove_unobstructed_examples() {
        let mut cur = tpc(families::star(3), 0);
        let mut steps = 0;
        while let Some((next, _)) = rule_remove_unobstructed(&cur).unwrap() {
            cur = next;
            steps += 1;
        }
        assert_eq!((steps, cur.graph.n()), (4, 0));
        assert!(rule_remove_unobstructed(&tpc(families::path(4), 1)).unwrap().is_none());
        let g = families::disjoint_union(&families::path(4), &Graph::new(1));
        let (_, step) = rule_remove_unobstructed(&tpc(g, 1)).unwrap().unwrap();
        assert_eq!(step.removed_vertices, vec![4]);
    }

    #[test]
    fn forced_edge_examples() {
        let (next, step) = rule_add_forced_edge(&tpc(double_p4(), 1)).unwrap().unwrap();
        assert_eq!(step.added_edges, vec![(0, 2)]);
        assert_eq!(next.k, 0);
        assert!(rule_add_forced_edge(&tpc(families::path(4), 1)).unwrap().is_none());
        assert!(rule_add_forced_edge(&tpc(families::complete(3), 0)).unwrap().is_none());
    }

    #[test]
    fn kernelize_examples() {
        let out = |g, k| kernelize_tpc(&tpc(g, k)).unwrap();
        // no rule touches C4; the 4-vertex kernel is a yes-instance
        let c4 = out(families::cycle(4), 1);
        let kernel = c4.outcome.kernel().unwrap();
        assert_eq!(kernel.graph.n(), 4);
        let lifted = c4.lift(&[(0, 2)]).unwrap();
        assert_eq!(lifted, vec![(0, 2)]);
        assert_eq!(out(families::path(4), 0).outcome, KernelOutcome::TrivialNo);
        assert_eq!(out(families::complete(3), 0).outcome, KernelOutcome::TrivialYes);
    }

    #[test]
    fn certificates_are_solutions() {
        for seed in 0..40 {
            let g = crate::gen::uniform_random(seed, 7, 0.5).unwrap();
            let k = kernelize_tpc(&tpc(g.clone(), 3)).unwrap();
            if let Some(c) = &k.certificate {
                let pairs = to_pairs(&g, c).unwrap();
                assert!(oracle::validate_solution(ProblemKind::TriviallyPerfectCompletion, &g, &pairs));
                assert!(c.len() <= 3);
            }
        }
    }
}
