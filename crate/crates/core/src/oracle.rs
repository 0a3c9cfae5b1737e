//! Exact solvers and class recognizers.
//!
//! The solver is iterative deepening over the size of the modification set,
//! branching on the first obstruction in canonical order. Pairs rejected in
//! an earlier sibling branch are frozen for the later siblings, so each
//! solution is reached along one path only.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph, Vertex};
use crate::obstruction::{self, Obstruction, ObstructionKind, CLUSTER, PSEUDO_SPLIT, SPLIT, TRIVIALLY_PERFECT};
use crate::problem::{GraphClass, ProblemKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    /// `None` when no solution of size at most the cap exists.
    pub opt: Option<usize>,
    /// Sorted; empty when `opt` is `None`.
    pub witness: Vec<EdgePair>,
}

impl ExactResult {
    pub fn exhausted(&self) -> bool {
        self.opt.is_none()
    }

    /// Whether a solution of size at most `k` exists; only meaningful for `k <= cap`.
    pub fn within(&self, k: i64) -> bool {
        k >= 0 && self.opt.is_some_and(|o| o as i64 <= k)
    }
}

pub fn class_kinds(class: GraphClass) -> &'static [ObstructionKind] {
    match class {
        GraphClass::Cluster => CLUSTER,
        GraphClass::TriviallyPerfect => TRIVIALLY_PERFECT,
        GraphClass::Split => SPLIT,
        GraphClass::PseudoSplit => PSEUDO_SPLIT,
    }
}

pub fn is_member(class: GraphClass, g: &Graph) -> bool {
    obstruction::is_free_of(g, class_kinds(class))
}

/// Split partition `C ⊎ I`, extended by a C5 module `S` for pseudo-split graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
    pub cycle: Vec<Vertex>,
}

impl Partition {
    /// Checks the defining conditions: `C` a clique, `I` independent, and,
    /// when `S` is present, `S` an induced C5 complete to `C` and anticomplete to `I`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let c = g.vertex_set(&self.clique);
        let i = g.vertex_set(&self.independent);
        let s = g.vertex_set(&self.cycle);
        let total = self.clique.len() + self.independent.len() + self.cycle.len();
        let mut all = c.clone();
        all.union_with(&i);
        all.union_with(&s);
        if total != g.n() || all.count_ones(..) != g.n() || !g.is_clique_set(&c) || !g.is_independent_set(&i) {
            return false;
        }
        if self.cycle.is_empty() {
            return true;
        }
        self.cycle.len() == 5
            && obstruction::enumerate_within(g, &[ObstructionKind::C5], Some(&s), None).len() == 1
            && self.cycle.iter().all(|&v| c.is_subset(g.row(v)) && g.row(v).is_disjoint(&i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognition {
    pub member: bool,
    /// Present for split and pseudo-split members.
    pub partition: Option<Partition>,
}

pub fn recognize(class: GraphClass, g: &Graph) -> Recognition {
    let member = is_member(class, g);
    let partition = match class {
        GraphClass::Split if member => Some(split_partition(g).expect("split graph has a split partition")),
        GraphClass::PseudoSplit if member => Some(pseudo_split_partition(g)),
        _ => None,
    };
    Recognition { member, partition }
}

/// Degree-sequence split partition: the `m` highest-degree vertices, where
/// `m` is the largest index with `d_m >= m - 1`, form the clique. Returns
/// `None` if `g` is not split.
pub fn split_partition(g: &Graph) -> Option<Partition> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = order.iter().enumerate().filter(|&(i, &v)| g.degree(v) >= i).map(|(i, _)| i + 1).max().unwrap_or(0);
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    let p = Partition { clique, independent, cycle: Vec::new() };
    p.is_valid(g).then_some(p)
}

fn pseudo_split_partition(g: &Graph) -> Partition {
    if let Some(p) = split_partition(g) {
        return p;
    }
    let s = obstruction::first(g, &[ObstructionKind::C5]).expect("non-split pseudo-split graph contains a C5");
    let cycle = s.vertices.clone();
    let sset = g.vertex_set(&cycle);
    let (clique, independent): (Vec<Vertex>, Vec<Vertex>) =
        g.vertices().filter(|v| !sset.contains(*v)).partition(|&v| g.row(v).is_superset(&sset));
    let p = Partition { clique, independent, cycle };
    debug_assert!(p.is_valid(g));
    p
}

fn pair_index(n: usize, e: EdgePair) -> usize {
    e.u() * n + e.v()
}

struct Search<'a> {
    problem: ProblemKind,
    n: usize,
    cur: Graph,
    frozen: FixedBitSet,
    chosen: Vec<EdgePair>,
    /// Strong triadic closure only: induced P3s of the input, and the deleted pairs.
    p3s: &'a [Obstruction],
    deleted: FixedBitSet,
}

impl Search<'_> {
    fn branch_pairs(&self) -> Option<Vec<EdgePair>> {
        let kinds = match self.problem {
            ProblemKind::StrongTriadicClosure => {
                let n = self.n;
                return self
                    .p3s
                    .iter()
                    .find(|o| o.edges().iter().all(|&e| !self.deleted.contains(pair_index(n, e))))
                    .map(|o| o.edges());
            }
            ProblemKind::ClusterDeletion => CLUSTER,
            ProblemKind::TriviallyPerfectCompletion => TRIVIALLY_PERFECT,
            ProblemKind::SplitDeletion | ProblemKind::SplitCompletion => SPLIT,
            ProblemKind::PseudoSplitDeletion | ProblemKind::PseudoSplitCompletion => PSEUDO_SPLIT,
        };
        let o = obstruction::first(&self.cur, kinds)?;
        Some(match self.problem {
            ProblemKind::TriviallyPerfectCompletion => {
                let t = &o.vertices;
                vec![EdgePair::of(t[0], t[2]), EdgePair::of(t[1], t[3])]
            }
            p if p.is_completion() => o.non_edges(),
            _ => o.edges(),
        })
    }

    fn apply(&mut self, e: EdgePair) {
        if self.problem == ProblemKind::StrongTriadicClosure {
            self.deleted.insert(pair_index(self.n, e));
        } else {
            self.cur.toggle_edge(e.u(), e.v());
        }
    }

    fn undo(&mut self, e: EdgePair) {
        if self.problem == ProblemKind::StrongTriadicClosure {
            self.deleted.set(pair_index(self.n, e), false);
        } else {
            self.cur.toggle_edge(e.u(), e.v());
        }
    }

    fn dfs(&mut self, budget: usize) -> bool {
        let Some(pairs) = self.branch_pairs() else { return true };
        if budget == 0 {
            return false;
        }
        let mut newly_frozen = Vec::new();
        let mut found = false;
        for e in pairs {
            let idx = pair_index(self.n, e);
            if self.frozen.contains(idx) {
                continue;
            }
            self.apply(e);
            self.chosen.push(e);
            if self.dfs(budget - 1) {
                found = true;
                break;
            }
            self.chosen.pop();
            self.undo(e);
            self.frozen.insert(idx);
            newly_frozen.push(idx);
        }
        for idx in newly_frozen {
            self.frozen.set(idx, false);
        }
        found
    }
}

/// Minimum solution of size at most `cap`, by iterative deepening.
pub fn solve_exact(problem: ProblemKind, g: &Graph, cap: usize) -> ExactResult {
    let n = g.n();
    let p3s = if problem == ProblemKind::StrongTriadicClosure {
        obstruction::enumerate(g, CLUSTER, None)
    } else {
        Vec::new()
    };
    for depth in 0..=cap {
        let mut s = Search {
            problem,
            n,
            cur: g.clone(),
            frozen: FixedBitSet::with_capacity(n * n),
            chosen: Vec::new(),
            p3s: &p3s,
            deleted: FixedBitSet::with_capacity(n * n),
        };
        if s.dfs(depth) {
            let mut witness = s.chosen;
            witness.sort_unstable();
            return ExactResult { opt: Some(witness.len()), witness };
        }
    }
    ExactResult { opt: None, witness: Vec::new() }
}

/// Optimum with no cap.
pub fn opt(problem: ProblemKind, g: &Graph) -> usize {
    let cap = g.n() * g.n().saturating_sub(1) / 2;
    solve_exact(problem, g, cap).opt.expect("every instance has a solution of at most all pairs")
}

/// Minimum number of edge deletions making `g` split.
pub fn sed(g: &Graph, cap: usize) -> ExactResult {
    solve_exact(ProblemKind::SplitDeletion, g, cap)
}

/// True iff `sol` is a set of distinct pairs of the right kind (edges for
/// deletion problems, non-edges for completion problems) that solves `problem` on `g`.
pub fn validate_solution(problem: ProblemKind, g: &Graph, sol: &[EdgePair]) -> bool {
    let mut sorted = sol.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sol.len() || sol.iter().any(|e| e.v() >= g.n()) {
        return false;
    }
    let completion = problem.is_completion();
    if sol.iter().any(|e| g.has_edge(e.u(), e.v()) == completion) {
        return false;
    }
    match problem.target_class() {
        Some(class) => is_member(class, &g.with_toggled(sol)),
        None => obstruction::enumerate(g, CLUSTER, None)
            .iter()
            .all(|o| o.edges().iter().any(|e| sorted.binary_search(e).is_ok())),
    }
}

/// Every solution of exactly `size` pairs; exponential, for tiny graphs only.
pub fn solutions_of_size(problem: ProblemKind, g: &Graph, size: usize) -> Vec<Vec<EdgePair>> {
    let pool: Vec<EdgePair> = if problem.is_completion() { g.non_edges().collect() } else { g.edges().collect() };
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(size);
    combinations(&pool, size, 0, &mut pick, &mut |s| {
        if validate_solution(problem, g, s) {
            out.push(s.to_vec());
        }
    });
    out
}

fn combinations<F: FnMut(&[EdgePair])>(
    pool: &[EdgePair],
    size: usize,
    from: usize,
    pick: &mut Vec<EdgePair>,
    f: &mut F,
) {
    if pick.len() == size {
        f(pick);
        return;
    }
    for i in from..pool.len() {
        if pool.len() - i < size - pick.len() {
            break;
        }
        pick.push(pool[i]);
        combinations(pool, size, i + 1, pick, f);
        pick.pop();
    }
}

/// Cost of turning `g` into a graph with pseudo-split partition `p` by edge
/// deletions: `E(I,I)`, `E(I,S)` and the chords of `S`. `None` if no deletion
/// set can realize `p` (C not a clique, C not complete to S, or `G[S]`
/// without a Hamiltonian 5-cycle).
pub fn partition_cost(g: &Graph, p: &Partition) -> Option<usize> {
    partition_solution(g, p).map(|s| s.len())
}

/// The deletion set realizing `p`, sorted; see [`partition_cost`].
pub fn partition_solution(g: &Graph, p: &Partition) -> Option<Vec<EdgePair>> {
    let c = g.vertex_set(&p.clique);
    let i = g.vertex_set(&p.independent);
    let s = g.vertex_set(&p.cycle);
    if p.clique.len() + p.independent.len() + p.cycle.len() != g.n() || !g.is_clique_set(&c) {
        return None;
    }
    let mut out: Vec<EdgePair> = Vec::new();
    for u in i.ones() {
        for &w in g.neighbors(u) {
            if (i.contains(w) && u < w) || s.contains(w) {
                out.push(EdgePair::of(u, w));
            }
        }
    }
    if !p.cycle.is_empty() {
        if p.cycle.len() != 5 || !p.cycle.iter().all(|&x| c.is_subset(g.row(x))) {
            return None;
        }
        let cyc = hamiltonian_c5(g, &p.cycle)?;
        for (a, &x) in p.cycle.iter().enumerate() {
            for &y in &p.cycle[a + 1..] {
                if g.has_edge(x, y) && !cyc.contains(&EdgePair::of(x, y)) {
                    out.push(EdgePair::of(x, y));
                }
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Edges of the first Hamiltonian cycle of `g[set]`, for a 5-vertex `set`.
fn hamiltonian_c5(g: &Graph, set: &[Vertex]) -> Option<Vec<EdgePair>> {
    let a = set[0];
    let rest = &set[1..];
    for b in 0..4 {
        for c in 0..4 {
            for d in 0..4 {
                if b == c || b == d || c == d || b + c + d < 3 || b + c + d > 6 {
                    continue;
                }
                let e = 6 - b - c - d;
                if e == b || e == c || e == d || b > e {
                    continue;
                }
                let order = [a, rest[b], rest[c], rest[d], rest[e]];
                if (0..5).all(|i| g.has_edge(order[i], order[(i + 1) % 5])) {
                    return Some((0..5).map(|i| EdgePair::of(order[i], order[(i + 1) % 5])).collect());
                }
            }
        }
    }
    None
}

/// Maximal cliques of `g[allowed]`, Bron–Kerbosch with pivoting.
pub fn maximal_cliques(g: &Graph, allowed: &FixedBitSet) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, allowed.clone(), FixedBitSet::with_capacity(g.n()), &mut out);
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<Vertex>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<Vertex>>) {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        return;
    }
    let pivot = p.ones().chain(x.ones()).max_by_key(|&u| g.row(u).intersection(&p).count()).expect("p or x nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.row(pivot));
    for v in candidates.ones().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.intersect_with(g.row(v));
        let mut nx = x.clone();
        nx.intersect_with(g.row(v));
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Cheapest partition of `g` with every `marked` vertex on the independent
/// side, by enumerating maximal cliques (and, for pseudo-split, candidate
/// 5-sets for `S`). Exponential in the worst case; a second, independent
/// oracle for split and pseudo-split deletion.
pub fn best_partition(g: &Graph, marked: &FixedBitSet, pseudo: bool) -> (usize, Partition) {
    let n = g.n();
    let mut free = FixedBitSet::with_capacity(n);
    free.insert_range(..);
    free.difference_with(marked);
    let mut best: Option<(usize, Partition)> = None;
    let mut consider = |p: Partition| {
        if let Some(c) = partition_cost(g, &p) {
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, p));
            }
        }
    };
    for clique in maximal_cliques(g, &free) {
        let cset = g.vertex_set(&clique);
        let independent = g.vertices().filter(|v| !cset.contains(*v)).collect();
        consider(Partition { clique, independent, cycle: Vec::new() });
    }
    if pseudo {
        let pool: Vec<Vertex> = free.ones().collect();
        let mut pick = Vec::with_capacity(5);
        five_sets(&pool, 0, &mut pick, &mut |s| {
            if hamiltonian_c5(g, s).is_none() {
                return;
            }
            let mut region = free.clone();
            for &x in s {
                region.intersect_with(g.row(x));
            }
            for clique in maximal_cliques(g, &region) {
                let mut used = g.vertex_set(&clique);
                for &x in s {
                    used.insert(x);
                }
                let independent = g.vertices().filter(|v| !used.contains(*v)).collect();
                consider(Partition { clique, independent, cycle: s.to_vec() });
            }
        });
    }
    best.expect("the all-independent partition is always feasible")
}

fn five_sets<F: FnMut(&[Vertex])>(pool: &[Vertex], from: usize, pick: &mut Vec<Vertex>, f: &mut F) {
    if pick.len() == 5 {
        f(pick);
        return;
    }
    for i in from..pool.len() {
        if pool.len() - i < 5 - pick.len() {
            break;
        }
        pick.push(pool[i]);
        five_sets(pool, i + 1, pick, f);
        pick.pop();
    }
}

/// Drops `seed` edges from `g + seed` while the graph stays trivially
/// perfect, scanning lowest label pair first and restarting after each drop.
/// Single drops can stall above an inclusion-minimal completion (P5 with
/// seed {02,04,14,24} has the subset {02,24}), so the survivors are then
/// shrunk to a smallest completing subset.
pub fn minimal_tp_completion(g: &Graph, seed: &[EdgePair]) -> Result<Graph> {
    let mut h = g.clone();
    for e in seed {
        g.check(e.u())?;
        g.check(e.v())?;
        h.add_edge(e.u(), e.v());
    }
    if !is_member(GraphClass::TriviallyPerfect, &h) {
        return Err(Error::Precondition("seed does not complete the graph to a trivially perfect graph".into()));
    }
    let label_pair = |e: &EdgePair| {
        let (a, b) = (g.label(e.u()), g.label(e.v()));
        (a.min(b), a.max(b))
    };
    let mut remaining: Vec<EdgePair> = seed.iter().copied().filter(|e| !g.has_edge(e.u(), e.v())).collect();
    remaining.sort_by_key(label_pair);
    remaining.dedup();
    'scan: loop {
        for i in 0..remaining.len() {
            let e = remaining[i];
            h.remove_edge(e.u(), e.v());
            if is_member(GraphClass::TriviallyPerfect, &h) {
                remaining.remove(i);
                continue 'scan;
            }
            h.add_edge(e.u(), e.v());
        }
        break;
    }
    for depth in 0..remaining.len() {
        let mut cur = g.clone();
        let mut chosen = Vec::new();
        if tp_within(&mut cur, &remaining, &mut chosen, depth) {
            return Ok(cur);
        }
    }
    Ok(h)
}

/// Completes `cur` to a trivially perfect graph with at most `budget` pairs
/// of `allowed`. Every P4 a-b-c-d or C4 needs ac or bd.
fn tp_within(cur: &mut Graph, allowed: &[EdgePair], chosen: &mut Vec<EdgePair>, budget: usize) -> bool {
    let Some(o) = obstruction::first(cur, TRIVIALLY_PERFECT) else { return true };
    if budget == 0 {
        return false;
    }
    let t = &o.vertices;
    for e in [EdgePair::of(t[0], t[2]), EdgePair::of(t[1], t[3])] {
        if chosen.contains(&e) || !allowed.contains(&e) {
            continue;
        }
        cur.add_edge(e.u(), e.v());
        chosen.push(e);
        if tp_within(cur, allowed, chosen, budget - 1) {
            return true;
        }
        chosen.pop();
        cur.remove_edge(e.u(), e.v());
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{families, paper_figure};

    #[test]
    fn solver_examples() {
        assert_eq!(solve_exact(ProblemKind::ClusterDeletion, &families::path(3), 2).opt, Some(1));
        let fig4 = paper_figure("fig4").unwrap();
        assert_eq!(solve_exact(ProblemKind::PseudoSplitDeletion, &fig4, 3).opt, Some(2));
        assert_eq!(solve_exact(ProblemKind::SplitDeletion, &families::cycle(5), 3).opt, Some(2));
        assert!(solve_exact(ProblemKind::SplitDeletion, &families::cycle(5), 1).exhausted());
    }

    #[test]
    fn witnesses_validate() {
        let g = paper_figure("fig3").unwrap();
        for p in ProblemKind::ALL {
            let r = solve_exact(p, &g, 12);
            assert!(validate_solution(p, &g, &r.witness), "{p}");
        }
    }

    #[test]
    fn recognizer_examples() {
        let c5 = families::cycle(5);
        let r = recognize(GraphClass::PseudoSplit, &c5);
        assert!(r.member);
        let p = r.partition.unwrap();
        assert!(p.clique.is_empty() && p.independent.is_empty());
        assert_eq!(p.cycle, vec![0, 1, 2, 3, 4]);
        assert!(!recognize(GraphClass::Split, &c5).member);
        assert!(!recognize(GraphClass::TriviallyPerfect, &families::path(4)).member);
        let s = recognize(GraphClass::Split, &families::star(3)).partition.unwrap();
        assert!(s.is_valid(&families::star(3)));
    }

    #[test]
    fn sed_examples() {
        assert_eq!(sed(&families::cycle(5), 5).opt, Some(2));
        assert_eq!(sed(&families::star(4), 5).opt, Some(0));
        let fig4 = paper_figure("fig4").unwrap();
        let v = sed(&fig4, 6).opt.unwrap();
        assert!((2..=4).contains(&v));
    }

    #[test]
    fn minimal_completion_examples() {
        let p4 = families::path(4);
        let seed: Vec<EdgePair> = p4.non_edges().collect();
        let h = minimal_tp_completion(&p4, &seed).unwrap();
        assert!(is_member(GraphClass::TriviallyPerfect, &h));
        assert!(h.m() - p4.m() <= 2);
        for e in h.edges().filter(|e| !p4.has_edge(e.u(), e.v())) {
            let mut less = h.clone();
            less.remove_edge(e.u(), e.v());
            assert!(!is_member(GraphClass::TriviallyPerfect, &less));
        }
        let k3 = families::complete(3);
        assert_eq!(minimal_tp_completion(&k3, &[]).unwrap(), k3);
        let c4 = families::cycle(4);
        let h = minimal_tp_completion(&c4, &[EdgePair::of(0, 2), EdgePair::of(1, 3)]).unwrap();
        assert_eq!(h.m(), 5);
        assert!(is_member(GraphClass::TriviallyPerfect, &h));
        assert!(minimal_tp_completion(&p4, &[]).is_err());
    }

    #[test]
    fn partition_oracle_agrees_on_small_cases() {
        let none = FixedBitSet::with_capacity(5);
        assert_eq!(best_partition(&families::cycle(5), &none, false).0, 2);
        assert_eq!(best_partition(&families::cycle(5), &none, true).0, 0);
        let fig4 = paper_figure("fig4").unwrap();
        assert_eq!(best_partition(&fig4, &FixedBitSet::with_capacity(6), true).0, 2);
        let (c, p) = best_partition(&families::cycle(4), &FixedBitSet::with_capacity(4), false);
        assert_eq!(c, 1);
        assert_eq!(partition_cost(&families::cycle(4), &p), Some(1));
    }

    #[test]
    fn stc_is_a_hitting_problem() {
        // P3 needs one weak edge; a triangle needs none.
        assert_eq!(solve_exact(ProblemKind::StrongTriadicClosure, &families::path(3), 2).opt, Some(1));
        assert_eq!(solve_exact(ProblemKind::StrongTriadicClosure, &families::complete(3), 2).opt, Some(0));
        assert!(!validate_solution(ProblemKind::StrongTriadicClosure, &families::path(3), &[]));
    }
}
