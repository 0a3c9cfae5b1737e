//! Oracle-backed checks shared by the test suites and the CLI: kernel
//! verdicts against the exact solver, and the structural lemmas the rules
//! rely on.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gen::{self, Family, GenSpec};
use crate::graph::{EdgePair, Graph, Vertex};
use crate::kernel::{self, kernelize_with, KernelOutcome, Kernelization, SplitConfig};
use crate::obstruction::{self, ObstructionKind, PSEUDO_SPLIT, SPLIT, TRIVIALLY_PERFECT};
use crate::oracle;
use crate::problem::{GraphClass, Instance, ProblemKind};

/// What one oracle comparison saw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checked {
    pub kernelization: Kernelization,
    pub yes: bool,
    /// Input solution for yes-instances.
    pub solution: Option<Vec<(usize, usize)>>,
}

/// Kernelizes `inst`, decides the kernel exactly, lifts, and compares with
/// the exact solver run on the input. `Err` describes the disagreement.
pub fn check_instance(inst: &Instance, cfg: &SplitConfig) -> Result<Checked, String> {
    let expected = oracle::solve_exact(inst.problem, &inst.graph, inst.k.max(0) as usize).within(inst.k);
    let kz = kernelize_with(inst, cfg).map_err(|e| e.to_string())?;
    if let KernelOutcome::Kernel(kernel) = &kz.outcome {
        let replayed = kz.replay().map_err(|e| e.to_string())?;
        if replayed != kernel.graph {
            return Err("trace replay differs from the kernel".into());
        }
        if kernel.k > inst.k {
            return Err(format!("kernel budget {} exceeds input budget {}", kernel.k, inst.k));
        }
    }
    let got = kernel::resolve(&kz).map_err(|e| format!("resolve failed: {e}"))?;
    match (&got, expected) {
        (Some(sol), true) => {
            let pairs = kernel::to_pairs(&inst.graph, sol).map_err(|e| e.to_string())?;
            if !oracle::validate_solution(inst.problem, &inst.graph, &pairs) {
                return Err(format!("{}: lifted set {sol:?} is not a solution", kz.outcome.tag()));
            }
            if sol.len() as i64 > inst.k {
                return Err(format!("{}: lifted solution has {} > k pairs", kz.outcome.tag(), sol.len()));
            }
        }
        (None, false) => {}
        (_, e) => {
            return Err(format!("{}: kernel says {}, exact solver says {}", kz.outcome.tag(), got.is_some(), e));
        }
    }
    Ok(Checked { kernelization: kz, yes: expected, solution: got })
}

/// Seeded instance with `3 <= n <= max_n` and `k <= max_k`: planted for
/// even seeds, uniform random with a random density for odd ones.
pub fn random_instance(problem: ProblemKind, seed: u64, max_n: usize, max_k: i64) -> Instance {
    let mut r = gen::rng(seed ^ 0x5eed_f00d);
    let n = r.gen_range(3..=max_n.max(3));
    let k = r.gen_range(0..=max_k.max(0));
    let family = if seed.is_multiple_of(2) {
        Family::Planted
    } else {
        Family::UniformRandom { p: *[0.2, 0.35, 0.5, 0.65, 0.8].choose(&mut r).expect("nonempty") }
    };
    let spec = GenSpec { seed, n, k, problem, family };
    gen::generate(&spec)
        .or_else(|_| gen::generate(&GenSpec { family: Family::UniformRandom { p: 0.5 }, ..spec }))
        .expect("uniform random generation cannot fail")
}

fn opt(problem: ProblemKind, g: &Graph) -> usize {
    oracle::opt(problem, g)
}

fn without(g: &Graph, v: Vertex) -> Graph {
    let mut h = g.clone();
    h.remove_vertices(&[v]);
    h
}

/// `opt(G) <= sed(G) <= opt(G) + 2` for pseudo-split deletion.
pub fn sed_sandwich(g: &Graph) -> Result<(), String> {
    let o = opt(ProblemKind::PseudoSplitDeletion, g);
    let s = opt(ProblemKind::SplitDeletion, g);
    if o <= s && s <= o + 2 {
        Ok(())
    } else {
        Err(format!("opt {o}, sed {s}"))
    }
}

/// Strong triadic closure never needs more weak edges than cluster
/// deletion needs deletions.
pub fn stc_below_cluster(g: &Graph) -> Result<(), String> {
    let (s, c) = (opt(ProblemKind::StrongTriadicClosure, g), opt(ProblemKind::ClusterDeletion, g));
    if s <= c {
        Ok(())
    } else {
        Err(format!("stc {s} > cluster {c}"))
    }
}

/// Removing a vertex outside every obstruction in `kinds` keeps `opt`.
pub fn safe_vertices(problem: ProblemKind, kinds: &[ObstructionKind], g: &Graph) -> Result<(), String> {
    let covered = obstruction::obstructed_vertices(g, kinds, None);
    let o = opt(problem, g);
    for v in g.vertices().filter(|v| !covered.contains(*v)) {
        let h = opt(problem, &without(g, v));
        if h != o {
            return Err(format!("{problem}: removing {v} changes opt {o} -> {h}"));
        }
    }
    Ok(())
}

pub fn safe_vertices_tp(g: &Graph) -> Result<(), String> {
    safe_vertices(ProblemKind::TriviallyPerfectCompletion, TRIVIALLY_PERFECT, g)
}

pub fn safe_vertices_split(g: &Graph) -> Result<(), String> {
    safe_vertices(ProblemKind::SplitDeletion, SPLIT, g)
}

pub fn safe_vertices_pseudo(g: &Graph) -> Result<(), String> {
    safe_vertices(ProblemKind::PseudoSplitDeletion, SPLIT, g)
}

/// Vertices outside every 2K2 and C4 whose removal changes the
/// pseudo-split deletion optimum.
pub fn pseudo_unsafe_vertices(g: &Graph) -> Vec<Vertex> {
    let covered = obstruction::obstructed_vertices(g, PSEUDO_SPLIT, None);
    let o = opt(ProblemKind::PseudoSplitDeletion, g);
    g.vertices()
        .filter(|&v| !covered.contains(v) && opt(ProblemKind::PseudoSplitDeletion, &without(g, v)) != o)
        .collect()
}

/// For every vertex the cluster rule may fire on (not only the lowest):
/// `opt(G) = opt(G - N[v]) + d(N[v])`.
pub fn rule_one_identity(g: &Graph) -> Result<(), String> {
    let o = opt(ProblemKind::ClusterDeletion, g);
    for v in g.vertices() {
        if !g.is_simplicial(v).expect("valid vertex") {
            continue;
        }
        let closed = g.closed_neighborhood(v);
        let d = g.boundary_degree_of(&closed);
        if d > g.degree(v) {
            continue;
        }
        let rest: Vec<Vertex> = g.vertices().filter(|u| !closed.contains(*u)).collect();
        let r = opt(ProblemKind::ClusterDeletion, &g.induced_subgraph(&rest));
        if o != r + d {
            return Err(format!("v={v}: opt {o} != {r} + {d}"));
        }
    }
    Ok(())
}

/// Minimal trivially perfect completions of `g` used by the structure
/// checks: one from the optimal witness and a few from the full completion
/// scanned under shuffled labels.
pub fn minimal_completions(g: &Graph, seed: u64, shuffles: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let r = oracle::solve_exact(ProblemKind::TriviallyPerfectCompletion, g, g.n() * g.n());
    out.push(oracle::minimal_tp_completion(g, &r.witness).expect("witness completes g"));
    let all: Vec<EdgePair> = g.non_edges().collect();
    let mut rng = gen::rng(seed);
    for _ in 0..shuffles {
        let mut labels: Vec<usize> = (0..g.n()).collect();
        labels.shuffle(&mut rng);
        let relabelled = g.clone().with_labels(labels).expect("permutation");
        let h = oracle::minimal_tp_completion(&relabelled, &all).expect("complete graph is trivially perfect");
        out.push(h.with_labels((0..g.n()).collect()).expect("identity labels"));
    }
    out
}

/// Modules, true twins and nested closed neighborhoods of `g` survive in
/// every completion from [`minimal_completions`].
pub fn completion_structure(g: &Graph, seed: u64) -> Result<(), String> {
    let n = g.n();
    let modules: Vec<Vec<Vertex>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|m| m.len() >= 2 && m.len() < n && g.is_module(m).expect("valid set"))
        .collect();
    let nested: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && g.closed_neighborhood(u).is_subset(&g.closed_neighborhood(v)))
        .collect();
    for h in minimal_completions(g, seed, 2) {
        if !oracle::is_member(GraphClass::TriviallyPerfect, &h) {
            return Err("completion is not trivially perfect".into());
        }
        if let Some(m) = modules.iter().find(|m| !h.is_module(m).expect("valid set")) {
            return Err(format!("module {m:?} broken"));
        }
        if let Some((u, v)) =
            nested.iter().find(|&&(u, v)| !h.closed_neighborhood(u).is_subset(&h.closed_neighborhood(v)))
        {
            return Err(format!("N[{u}] no longer inside N[{v}]"));
        }
        let twins = h.true_twins();
        if let Some(p) = g.true_twins().into_iter().find(|p| !twins.contains(p)) {
            return Err(format!("true twins {p:?} separated"));
        }
    }
    Ok(())
}

/// Clique-side vertices of the modulator partition that land on the
/// independent side of an optimal partition: at most `x` with
/// `C(x, 2) <= opt`. At most one independent-side vertex lands in the
/// clique, and (pseudo-split) at most two in the cycle. Checked against
/// every optimal witness.
pub fn partition_lemma(g: &Graph, pseudo: bool) -> Result<(), String> {
    let (problem, class) = if pseudo {
        (ProblemKind::PseudoSplitDeletion, GraphClass::PseudoSplit)
    } else {
        (ProblemKind::SplitDeletion, GraphClass::Split)
    };
    let (_, part) = kernel::build_modulator(g, |_| false);
    let part = part.expect("no stop condition");
    let cm = g.vertex_set(&part.clique);
    let im = g.vertex_set(&part.independent);
    let o = opt(problem, g);
    for sol in oracle::solutions_of_size(problem, g, o) {
        let p = oracle::recognize(class, &g.with_toggled(&sol)).partition.ok_or("witness leaves the class")?;
        let c = g.vertex_set(&p.clique);
        let i = g.vertex_set(&p.independent);
        let s = g.vertex_set(&p.cycle);
        let x = cm.intersection(&i).count();
        if x * x.saturating_sub(1) / 2 > o {
            return Err(format!("{x} clique-side vertices in I with opt {o}"));
        }
        if im.intersection(&c).count() > 1 {
            return Err("two independent-side vertices in C".into());
        }
        if im.intersection(&s).count() > 2 {
            return Err("three independent-side vertices in S".into());
        }
    }
    Ok(())
}

/// When `opt < sed`, every optimal witness leaves a C5 that is already
/// induced in `g`, and no independent-side vertex forms a triangle with two
/// cycle vertices in `g`.
pub fn c5_structure(g: &Graph) -> Result<(), String> {
    let o = opt(ProblemKind::PseudoSplitDeletion, g);
    if opt(ProblemKind::SplitDeletion, g) == o {
        return Ok(());
    }
    for sol in oracle::solutions_of_size(ProblemKind::PseudoSplitDeletion, g, o) {
        let p = oracle::recognize(GraphClass::PseudoSplit, &g.with_toggled(&sol))
            .partition
            .ok_or("witness leaves the class")?;
        if p.cycle.is_empty() {
            return Err(format!("optimal witness {sol:?} leaves a split graph"));
        }
        let s = g.vertex_set(&p.cycle);
        if obstruction::enumerate_within(g, &[ObstructionKind::C5], Some(&s), None).len() != 1 {
            return Err(format!("cycle {:?} is not induced in g", p.cycle));
        }
        for &u in &p.independent {
            let hits: Vec<Vertex> = p.cycle.iter().copied().filter(|&v| g.has_edge(u, v)).collect();
            if hits.iter().any(|&a| hits.iter().any(|&b| g.has_edge(a, b))) {
                return Err(format!("{u} forms a triangle with the cycle"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{families, paper_figure};

    #[test]
    fn random_instances_are_reproducible() {
        for p in ProblemKind::ALL {
            assert_eq!(random_instance(p, 7, 12, 5), random_instance(p, 7, 12, 5));
        }
    }

    #[test]
    fn fig4_is_a_negative_control() {
        let g = paper_figure("fig4").unwrap();
        assert!(pseudo_unsafe_vertices(&g).contains(&5));
        assert_eq!(opt(ProblemKind::PseudoSplitDeletion, &without(&g, 5)), 1);
        assert!(safe_vertices_pseudo(&g).is_ok());
    }

    #[test]
    fn small_lemma_checks() {
        for g in [families::path(5), families::cycle(5), families::star(3), paper_figure("fig4").unwrap()] {
            sed_sandwich(&g).unwrap();
            stc_below_cluster(&g).unwrap();
            rule_one_identity(&g).unwrap();
            completion_structure(&g, 1).unwrap();
            partition_lemma(&g, false).unwrap();
            partition_lemma(&g, true).unwrap();
            c5_structure(&g).unwrap();
        }
    }

    #[test]
    fn check_instance_examples() {
        let ok =
            check_instance(&Instance::new(ProblemKind::ClusterDeletion, families::path(3), 1), &SplitConfig::default());
        assert!(ok.unwrap().yes);
    }
}
