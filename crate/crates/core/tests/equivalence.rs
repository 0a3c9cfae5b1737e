//! Kernel verdicts against the exact solver, end to end.

use kernelkit::gen::{all_labelled_graphs, nonisomorphic_graphs};
use kernelkit::kernel::{SplitConfig, Thresholds};
use kernelkit::verify::{check_instance, random_instance};
use kernelkit::{Graph, Instance, ProblemKind};

fn run_all(
    problem: ProblemKind,
    graphs: impl Iterator<Item = Graph>,
    ks: std::ops::RangeInclusive<i64>,
    cfg: &SplitConfig,
) {
    let mut failures = Vec::new();
    for g in graphs {
        for k in ks.clone() {
            let inst = Instance::new(problem, g.clone(), k);
            if let Err(e) = check_instance(&inst, cfg) {
                failures.push(format!("{:?} k={k}: {e}", g.labelled_edges()));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{problem}: {} failures, first {:?}",
        failures.len(),
        &failures[..failures.len().min(3)]
    );
}

#[test]
fn exhaustive_up_to_five_vertices() {
    for p in ProblemKind::ALL {
        for n in 0..=5 {
            run_all(p, all_labelled_graphs(n), 0..=3, &SplitConfig::default());
        }
    }
}

#[test]
fn six_vertices_up_to_isomorphism() {
    for p in [
        ProblemKind::TriviallyPerfectCompletion,
        ProblemKind::SplitDeletion,
        ProblemKind::SplitCompletion,
        ProblemKind::PseudoSplitDeletion,
        ProblemKind::PseudoSplitCompletion,
    ] {
        run_all(p, nonisomorphic_graphs(6).into_iter(), 0..=3, &SplitConfig::default());
    }
}

fn random_sweep(problem: ProblemKind, count: u64, max_n: usize, max_k: i64, cfg: &SplitConfig) {
    let mut failures = Vec::new();
    for seed in 0..count {
        let inst = random_instance(problem, seed, max_n, max_k);
        if let Err(e) = check_instance(&inst, cfg) {
            failures.push(format!("seed {seed}: {e}"));
        }
    }
    assert!(failures.is_empty(), "{problem}: {failures:?}");
}

#[test]
fn random_cluster_and_stc() {
    random_sweep(ProblemKind::ClusterDeletion, 1000, 12, 5, &SplitConfig::default());
    random_sweep(ProblemKind::StrongTriadicClosure, 1000, 12, 5, &SplitConfig::default());
}

#[test]
fn random_tpc() {
    random_sweep(ProblemKind::TriviallyPerfectCompletion, 1000, 10, 4, &SplitConfig::default());
}

#[test]
fn random_split() {
    random_sweep(ProblemKind::SplitDeletion, 1000, 12, 5, &SplitConfig::default());
    random_sweep(ProblemKind::SplitCompletion, 1000, 12, 5, &SplitConfig::default());
}

#[test]
fn random_pseudo_split() {
    random_sweep(ProblemKind::PseudoSplitDeletion, 1000, 12, 5, &SplitConfig::default());
    random_sweep(ProblemKind::PseudoSplitCompletion, 1000, 12, 5, &SplitConfig::default());
}

#[test]
fn marked_degree_rule_stays_safe() {
    let cfg = SplitConfig { marked_degree_rule: true, ..SplitConfig::default() };
    for p in [ProblemKind::SplitDeletion, ProblemKind::PseudoSplitDeletion] {
        random_sweep(p, 400, 12, 5, &cfg);
        for n in 0..=5 {
            run_all(p, all_labelled_graphs(n), 0..=3, &cfg);
        }
    }
}

#[test]
fn literal_thresholds_fail_somewhere() {
    let cfg = SplitConfig { thresholds: Thresholds::Literal, ..SplitConfig::default() };
    let g = Graph::from_edges(7, [(0, 3), (0, 6), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (3, 6), (4, 6)]).unwrap();
    assert!(check_instance(&Instance::new(ProblemKind::SplitDeletion, g.clone(), 2), &cfg).is_err());
    assert!(check_instance(&Instance::new(ProblemKind::SplitDeletion, g, 2), &SplitConfig::default()).is_ok());
}
