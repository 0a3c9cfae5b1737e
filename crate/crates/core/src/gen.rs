//! Seeded instance generators, small graph families, the two example graphs,
//! and exhaustive enumeration of small graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph, Vertex};
use crate::obstruction::{self, CLUSTER};
use crate::oracle;
use crate::problem::{Instance, ProblemKind};

const RESAMPLE_ATTEMPTS: usize = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Planted,
    UniformRandom { p: f64 },
    PaperFigure { name: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub k: i64,
    pub problem: ProblemKind,
    #[serde(flatten)]
    pub family: Family,
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    match &spec.family {
        Family::Planted => plant(spec.seed, spec.problem, spec.n, spec.k),
        Family::UniformRandom { p } => Ok(Instance::new(spec.problem, uniform_random(spec.seed, spec.n, *p)?, spec.k)),
        Family::PaperFigure { name } => Ok(Instance::new(spec.problem, paper_figure(name)?, spec.k)),
    }
}

/// Erdős–Rényi sample: each pair independently with probability `p`.
pub fn uniform_random(seed: u64, n: usize, p: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InfeasibleSpec(format!("edge probability {p} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// `fig3`: the 8-vertex, 18-edge cluster/STC example. `fig4`: the 6-vertex
/// pseudo-split example, vertices `v1..v6` as ids `0..5`.
pub fn paper_figure(name: &str) -> Result<Graph> {
    match name {
        "fig3" => {
            let mut g = families::complete(4);
            for i in 0..4 {
                g.add_vertex(4 + i);
            }
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        g.add_edge(i, 4 + j);
                    }
                }
            }
            Ok(g)
        }
        "fig4" => Graph::from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (0, 1), (0, 3)]),
        other => Err(Error::UnknownFigure(other.to_string())),
    }
}

/// A random member of the problem's target class, perturbed by exactly `k`
/// edge modifications of the kind a solution would undo. The instance
/// therefore has optimum at most `k`.
pub fn plant(seed: u64, problem: ProblemKind, n: usize, k: i64) -> Result<Instance> {
    if k < 0 {
        return Err(Error::InfeasibleSpec(format!("negative k {k}")));
    }
    let mut r = rng(seed);
    let base = match problem {
        ProblemKind::ClusterDeletion | ProblemKind::StrongTriadicClosure => random_cluster(&mut r, n),
        ProblemKind::TriviallyPerfectCompletion => random_trivially_perfect(&mut r, n),
        ProblemKind::SplitDeletion | ProblemKind::SplitCompletion => random_split(&mut r, n, false),
        ProblemKind::PseudoSplitDeletion | ProblemKind::PseudoSplitCompletion => random_split(&mut r, n, true),
    };
    let pool: Vec<EdgePair> = if problem.is_completion() { base.edges().collect() } else { base.non_edges().collect() };
    let k_us = k as usize;
    if k_us > pool.len() {
        return Err(Error::InfeasibleSpec(format!(
            "k = {k} exceeds the {} pairs available for perturbation",
            pool.len()
        )));
    }
    let mut g = base.clone();
    for _ in 0..RESAMPLE_ATTEMPTS {
        let picks: Vec<EdgePair> = pool.choose_multiple(&mut r, k_us).copied().collect();
        g = base.with_toggled(&picks);
        if k == 0 || !in_class(problem, &g) {
            break;
        }
    }
    Ok(Instance::new(problem, g, k))
}

fn in_class(problem: ProblemKind, g: &Graph) -> bool {
    match problem.target_class() {
        Some(c) => oracle::is_member(c, g),
        None => obstruction::is_free_of(g, CLUSTER),
    }
}

fn random_cluster(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let mut g = Graph::new(n);
    let mut i = 0;
    while i < n {
        let size = r.gen_range(1..=(n - i).min(4));
        let part = &order[i..i + size];
        for (a, &u) in part.iter().enumerate() {
            for &v in &part[a + 1..] {
                g.add_edge(u, v);
            }
        }
        i += size;
    }
    g
}

/// Comparability graph of a random rooted forest: every vertex is adjacent to
/// its ancestors and descendants.
fn random_trivially_perfect(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    for i in 1..n {
        if r.gen_bool(0.8) {
            parent[order[i]] = Some(order[r.gen_range(0..i)]);
        }
    }
    let mut g = Graph::new(n);
    for v in 0..n {
        let mut a = parent[v];
        while let Some(p) = a {
            g.add_edge(v, p);
            a = parent[p];
        }
    }
    g
}

/// Random split graph, optionally with a C5 module complete to the clique side.
fn random_split(r: &mut ChaCha8Rng, n: usize, with_c5: bool) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let s: Vec<Vertex> = if with_c5 && n >= 5 && r.gen_bool(0.5) { order.drain(..5).collect() } else { Vec::new() };
    let (clique, indep): (Vec<Vertex>, Vec<Vertex>) = order.iter().copied().partition(|_| r.gen_bool(0.5));
    let mut g = Graph::new(n);
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            g.add_edge(u, v);
        }
        for &v in &indep {
            if r.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
        for &v in &s {
            g.add_edge(u, v);
        }
    }
    for i in 0..s.len() {
        g.add_edge(s[i], s[(i + 1) % s.len()]);
    }
    g
}

/// Common small graphs, vertices `0..n`.
pub mod families {
    use crate::graph::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// Disjoint union, the second graph's vertices shifted by `a.n()`.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let off = a.n();
        let edges = a.edges().map(|e| (e.u(), e.v())).chain(b.edges().map(|e| (e.u() + off, e.v() + off)));
        Graph::from_edges(a.n() + b.n(), edges).expect("valid union")
    }
}

/// Every labelled graph on `n` vertices (`n <= 11`), by adjacency code.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let bits = n * n.saturating_sub(1) / 2;
    assert!(bits < 64, "too many vertices for exhaustive enumeration");
    (0..1u64 << bits).map(move |c| Graph::from_adjacency_code(n, c))
}

/// Adjacency code minimized over all orderings compatible with an
/// isomorphism-invariant colour refinement; equal for isomorphic graphs.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&u| colour[u]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).unwrap()).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = ranked.len();
        colour = next;
        if after == before {
            break;
        }
    }
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut by_colour: Vec<Vertex> = (0..n).collect();
    by_colour.sort_by_key(|&v| (colour[v], v));
    for v in by_colour {
        match classes.last_mut() {
            Some(c) if colour[c[0]] == colour[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_classes(g, &mut classes, 0, &mut order, &mut best);
    best
}

fn permute_classes(g: &Graph, classes: &mut [Vec<Vertex>], ci: usize, order: &mut Vec<Vertex>, best: &mut u64) {
    if ci == classes.len() {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if g.has_edge(order[i], order[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let len = classes[ci].len();
    permute_within(g, classes, ci, len, order, best);
}

/// Heap-style recursion over the permutations of `classes[ci]`.
fn permute_within(
    g: &Graph,
    classes: &mut [Vec<Vertex>],
    ci: usize,
    remaining: usize,
    order: &mut Vec<Vertex>,
    best: &mut u64,
) {
    if remaining == 0 {
        permute_classes(g, classes, ci + 1, order, best);
        return;
    }
    let len = classes[ci].len();
    let start = len - remaining;
    for i in start..len {
        classes[ci].swap(start, i);
        order.push(classes[ci][start]);
        permute_within(g, classes, ci, remaining - 1, order, best);
        order.pop();
        classes[ci].swap(start, i);
    }
}

/// One representative per isomorphism class on `n` vertices (`n <= 8`),
/// grown vertex by vertex from the classes on `n - 1` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "isomorphism-class enumeration is limited to n <= 8");
    let mut level = vec![Graph::new(0)];
    for size in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << (size - 1) {
                let mut h = g.clone();
                let v = h.add_vertex(size - 1);
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, v);
                    }
                }
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures() {
        let f3 = paper_figure("fig3").unwrap();
        assert_eq!((f3.n(), f3.m()), (8, 18));
        let f4 = paper_figure("fig4").unwrap();
        assert_eq!((f4.n(), f4.m()), (6, 7));
        assert!(matches!(paper_figure("fig9"), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn uniform_extremes_and_determinism() {
        assert_eq!(uniform_random(1, 6, 0.0).unwrap().m(), 0);
        assert_eq!(uniform_random(1, 6, 1.0).unwrap().m(), 15);
        assert_eq!(uniform_random(42, 10, 0.5).unwrap(), uniform_random(42, 10, 0.5).unwrap());
        assert!(uniform_random(1, 3, 1.5).is_err());
    }

    #[test]
    fn planted_split_without_budget_is_split() {
        for seed in 0..20 {
            let inst = plant(seed, ProblemKind::SplitDeletion, 8, 0).unwrap();
            assert!(oracle::is_member(crate::GraphClass::Split, &inst.graph));
        }
    }

    #[test]
    fn planted_is_reproducible() {
        for p in ProblemKind::ALL {
            assert_eq!(plant(7, p, 9, 2).unwrap(), plant(7, p, 9, 2).unwrap());
        }
        assert!(plant(0, ProblemKind::ClusterDeletion, 3, 10).is_err());
    }

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn canonical_code_is_invariant() {
        let g = families::path(5);
        let p = Graph::from_edges(5, [(3, 1), (1, 4), (4, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&p));
        assert_ne!(canonical_code(&g), canonical_code(&families::star(4)));
    }
}
