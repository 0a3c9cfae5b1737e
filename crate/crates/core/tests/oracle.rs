//! The exact solver and obstruction finder against naive enumeration.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use kernelkit::gen::{self, all_labelled_graphs, nonisomorphic_graphs, plant};
use kernelkit::obstruction::{self, ObstructionKind};
use kernelkit::oracle::{self, best_partition, opt, recognize, solutions_of_size, solve_exact, validate_solution};
use kernelkit::{EdgePair, Graph, GraphClass, ProblemKind};

/// Kind of the induced subgraph on `vs`, judged from edge and degree counts only.
fn naive_kind(g: &Graph, vs: &[usize]) -> Option<ObstructionKind> {
    let deg: Vec<usize> = vs.iter().map(|&u| vs.iter().filter(|&&w| g.has_edge(u, w)).count()).collect();
    let m = deg.iter().sum::<usize>() / 2;
    let mut d = deg.clone();
    d.sort_unstable();
    match (vs.len(), m, d.as_slice()) {
        (3, 2, _) => Some(ObstructionKind::P3),
        (4, 3, [1, 1, 2, 2]) => Some(ObstructionKind::P4),
        (4, 4, [2, 2, 2, 2]) => Some(ObstructionKind::C4),
        (4, 2, [1, 1, 1, 1]) => Some(ObstructionKind::TwoK2),
        (5, 5, [2, 2, 2, 2, 2]) => Some(ObstructionKind::C5),
        _ => None,
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn enumeration_matches_naive_check() {
    let kinds =
        [ObstructionKind::P3, ObstructionKind::P4, ObstructionKind::C4, ObstructionKind::TwoK2, ObstructionKind::C5];
    let mut graphs: Vec<Graph> = (0..=6).flat_map(nonisomorphic_graphs).collect();
    graphs.extend((0..40).map(|s| gen::uniform_random(s, 8, 0.3 + 0.01 * s as f64).unwrap()));
    for g in &graphs {
        for kind in kinds {
            let found: BTreeSet<Vec<usize>> = obstruction::enumerate(g, &[kind], None)
                .into_iter()
                .map(|o| {
                    assert!(obstruction::induces(g, kind, &o.vertices));
                    let mut v = o.vertices;
                    v.sort_unstable();
                    v
                })
                .collect();
            let naive: BTreeSet<Vec<usize>> =
                subsets(g.n(), kind.order()).into_iter().filter(|s| naive_kind(g, s) == Some(kind)).collect();
            assert_eq!(found, naive, "{kind} on {:?}", g.labelled_edges());
        }
    }
}

#[test]
fn membership_matches_class_definitions() {
    for g in (0..=6).flat_map(nonisomorphic_graphs) {
        let split = recognize(GraphClass::Split, &g);
        assert_eq!(split.member, split.partition.as_ref().is_some_and(|p| p.is_valid(&g) && p.cycle.is_empty()));
        let pseudo = recognize(GraphClass::PseudoSplit, &g);
        if pseudo.member {
            assert!(pseudo.partition.unwrap().is_valid(&g));
        }
        // trivially perfect: every connected induced subgraph has a universal vertex
        let tp = (1u32..1 << g.n()).all(|mask| {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.induced_subgraph(&vs);
            !connected(&h) || h.vertices().any(|v| h.is_universal(v).unwrap())
        });
        assert_eq!(tp, oracle::is_member(GraphClass::TriviallyPerfect, &g));
    }
}

fn connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen.put(w) {
                stack.push(w);
            }
        }
    }
    seen.count_ones(..) == g.n()
}

#[test]
fn solver_matches_subset_enumeration() {
    for n in 0..=5 {
        for g in all_labelled_graphs(n) {
            for p in ProblemKind::ALL {
                let r = solve_exact(p, &g, 10);
                let o = r.opt.expect("cap 10 covers every graph on five vertices");
                assert!(validate_solution(p, &g, &r.witness));
                assert_eq!(r.witness.len(), o);
                let naive = (0..=o).find(|&s| !solutions_of_size(p, &g, s).is_empty());
                assert_eq!(naive, Some(o), "{p} on {:?}", g.labelled_edges());
            }
        }
    }
}

#[test]
fn witnesses_pass_recognition_up_to_seven() {
    for g in (6..=7).flat_map(nonisomorphic_graphs) {
        for p in ProblemKind::ALL {
            let r = solve_exact(p, &g, 21);
            assert!(validate_solution(p, &g, &r.witness), "{p}");
        }
    }
}

#[test]
fn completion_is_deletion_on_the_complement() {
    for g in (0..=6).flat_map(nonisomorphic_graphs) {
        let c = g.complement();
        assert_eq!(opt(ProblemKind::SplitCompletion, &g), opt(ProblemKind::SplitDeletion, &c));
        assert_eq!(opt(ProblemKind::PseudoSplitCompletion, &g), opt(ProblemKind::PseudoSplitDeletion, &c));
    }
}

#[test]
fn best_partition_matches_solver() {
    let none = |n| FixedBitSet::with_capacity(n);
    for g in (0..=6).flat_map(nonisomorphic_graphs) {
        assert_eq!(best_partition(&g, &none(g.n()), false).0, opt(ProblemKind::SplitDeletion, &g));
        assert_eq!(best_partition(&g, &none(g.n()), true).0, opt(ProblemKind::PseudoSplitDeletion, &g));
    }
}

#[test]
fn planted_instances_are_yes_instances() {
    for p in ProblemKind::ALL {
        for seed in 0..60 {
            let n = 4 + (seed % 9) as usize;
            let k = (seed % 6) as i64;
            let Ok(inst) = plant(seed, p, n, k) else { continue };
            assert_eq!(inst, plant(seed, p, n, k).unwrap());
            assert!(solve_exact(p, &inst.graph, k as usize).within(k), "{p} seed {seed}");
        }
    }
}

#[test]
fn minimal_completions_are_inclusion_minimal() {
    for g in (0..=6).flat_map(nonisomorphic_graphs) {
        let all: Vec<EdgePair> = g.non_edges().collect();
        let h = oracle::minimal_tp_completion(&g, &all).unwrap();
        let added: Vec<EdgePair> = h.edges().filter(|e| !g.has_edge(e.u(), e.v())).collect();
        for size in 0..added.len() {
            let mut pick = Vec::new();
            assert!(!any_subset_completes(&g, &added, size, 0, &mut pick), "{:?}", g.labelled_edges());
        }
    }
}

fn any_subset_completes(g: &Graph, pool: &[EdgePair], size: usize, from: usize, pick: &mut Vec<EdgePair>) -> bool {
    if pick.len() == size {
        return oracle::is_member(GraphClass::TriviallyPerfect, &g.with_toggled(pick));
    }
    (from..pool.len()).any(|i| {
        pick.push(pool[i]);
        let r = any_subset_completes(g, pool, size, i + 1, pick);
        pick.pop();
        r
    })
}
