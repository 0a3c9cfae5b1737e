//! Kernel size bounds on oracle-confirmed yes-instances and on larger
//! planted and random instances.

use kernelkit::gen::{self, Family, GenSpec};
use kernelkit::kernel::{self, candidate_endpoints, completion_edge_bound, size_bound};
use kernelkit::oracle::solve_exact;
use kernelkit::verify::random_instance;
use kernelkit::{Instance, KernelOutcome, ProblemKind};

fn check_kernel(inst: &Instance) -> Option<String> {
    let kz = kernel::kernelize(inst).unwrap();
    let KernelOutcome::Kernel(ker) = &kz.outcome else { return None };
    let (n, k) = (ker.graph.n(), inst.k);
    let completion = matches!(inst.problem, ProblemKind::SplitCompletion | ProblemKind::PseudoSplitCompletion);
    let yes_only = !matches!(
        inst.problem,
        ProblemKind::SplitDeletion
            | ProblemKind::SplitCompletion
            | ProblemKind::PseudoSplitDeletion
            | ProblemKind::PseudoSplitCompletion
    );
    // the non-split kernels only promise the bound on yes-instances
    if yes_only && !solve_exact(inst.problem, &inst.graph, k as usize).within(k) {
        return None;
    }
    if n > size_bound(inst.problem, k) {
        return Some(format!("{}: {n} vertices > {}", inst.problem, size_bound(inst.problem, k)));
    }
    if completion && ker.graph.m() > completion_edge_bound(k, n) {
        return Some(format!("{}: {} edges > {}", inst.problem, ker.graph.m(), completion_edge_bound(k, n)));
    }
    if inst.problem == ProblemKind::TriviallyPerfectCompletion
        && candidate_endpoints(&ker.graph) > (2 * ker.k * ker.k + 2 * ker.k) as usize
    {
        return Some("too many candidate endpoints".into());
    }
    None
}

#[test]
fn small_random_kernels_respect_bounds() {
    for p in ProblemKind::ALL {
        let max_n = if p == ProblemKind::TriviallyPerfectCompletion { 10 } else { 12 };
        let bad: Vec<String> = (0..1000).filter_map(|s| check_kernel(&random_instance(p, s, max_n, 5))).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn split_family_bounds_on_larger_instances() {
    for p in [
        ProblemKind::SplitDeletion,
        ProblemKind::SplitCompletion,
        ProblemKind::PseudoSplitDeletion,
        ProblemKind::PseudoSplitCompletion,
    ] {
        for seed in 0..300u64 {
            let n = 10 + (seed % 40) as usize;
            let k = 1 + (seed / 7 % 10) as i64;
            let family = if seed % 3 == 0 { Family::UniformRandom { p: 0.5 } } else { Family::Planted };
            let Ok(inst) = gen::generate(&GenSpec { seed, n, k, problem: p, family }) else { continue };
            assert_eq!(check_kernel(&inst), None, "seed {seed}");
        }
    }
}

#[test]
fn cluster_bounds_on_planted_instances() {
    for p in [ProblemKind::ClusterDeletion, ProblemKind::StrongTriadicClosure] {
        for seed in 0..200u64 {
            let n = 8 + (seed % 8) as usize;
            let k = 1 + (seed % 5) as i64;
            let inst = gen::plant(seed, p, n, k).unwrap();
            assert_eq!(check_kernel(&inst), None, "seed {seed}");
        }
    }
}
