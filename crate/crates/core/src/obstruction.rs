//! Induced forbidden subgraphs: P3, P4, C4, C5, 2K2 and I0-centered P3.
//!
//! Every occurrence is reported once, as its canonical tuple: the
//! lexicographically smallest ordering of its vertices that respects the
//! roles of the pattern. Enumeration walks tuple positions in increasing
//! order, so each kind comes out sorted.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{EdgePair, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObstructionKind {
    P3,
    P4,
    C4,
    C5,
    TwoK2,
    /// P3 whose middle vertex is marked; the tuple lists the center first.
    I0P3,
}

impl ObstructionKind {
    pub fn order(self) -> usize {
        match self {
            ObstructionKind::P3 | ObstructionKind::I0P3 => 3,
            ObstructionKind::P4 | ObstructionKind::C4 | ObstructionKind::TwoK2 => 4,
            ObstructionKind::C5 => 5,
        }
    }

    /// Position pairs that must be adjacent; every other pair must not be.
    fn pattern(self) -> &'static [(usize, usize)] {
        match self {
            ObstructionKind::P3 => &[(0, 1), (1, 2)],
            ObstructionKind::I0P3 => &[(0, 1), (0, 2)],
            ObstructionKind::P4 => &[(0, 1), (1, 2), (2, 3)],
            ObstructionKind::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            ObstructionKind::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            ObstructionKind::TwoK2 => &[(0, 1), (2, 3)],
        }
    }
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ObstructionKind::P3 => "P3",
            ObstructionKind::P4 => "P4",
            ObstructionKind::C4 => "C4",
            ObstructionKind::C5 => "C5",
            ObstructionKind::TwoK2 => "2K2",
            ObstructionKind::I0P3 => "I0-P3",
        };
        f.write_str(s)
    }
}

pub const CLUSTER: &[ObstructionKind] = &[ObstructionKind::P3];
pub const TRIVIALLY_PERFECT: &[ObstructionKind] = &[ObstructionKind::P4, ObstructionKind::C4];
pub const SPLIT: &[ObstructionKind] = &[ObstructionKind::TwoK2, ObstructionKind::C4, ObstructionKind::C5];
pub const PSEUDO_SPLIT: &[ObstructionKind] = &[ObstructionKind::TwoK2, ObstructionKind::C4];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: Vec<Vertex>,
}

impl Obstruction {
    fn sort_key(&self) -> (&[Vertex], ObstructionKind) {
        (&self.vertices, self.kind)
    }

    /// Edges of `g` among the obstruction's vertices, lexicographically.
    pub fn edges(&self) -> Vec<EdgePair> {
        let mut out: Vec<EdgePair> =
            self.kind.pattern().iter().map(|&(i, j)| EdgePair::of(self.vertices[i], self.vertices[j])).collect();
        out.sort_unstable();
        out
    }

    /// Missing pairs among the obstruction's vertices, lexicographically.
    pub fn non_edges(&self) -> Vec<EdgePair> {
        let pat = self.kind.pattern();
        let k = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if !pat.contains(&(i, j)) {
                    out.push(EdgePair::of(self.vertices[i], self.vertices[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// True iff `tuple` consists of distinct vertices inducing exactly `kind` in role order.
pub fn induces(g: &Graph, kind: ObstructionKind, tuple: &[Vertex]) -> bool {
    if tuple.len() != kind.order() || tuple.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let pat = kind.pattern();
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] == tuple[j] || g.has_edge(tuple[i], tuple[j]) != pat.contains(&(i, j)) {
                return false;
            }
        }
    }
    true
}

/// Calls `f` on every canonical occurrence of `kind` whose vertices all lie in
/// `allowed` (all vertices when `None`), in lexicographic order. Stops early
/// when `f` returns `false`; the return value says whether the walk finished.
///
/// `I0P3` is treated as a plain P3 with the center listed first; restrict the
/// center with [`i0_centered_p3s`].
pub fn visit<F>(g: &Graph, kind: ObstructionKind, allowed: Option<&FixedBitSet>, mut f: F) -> bool
where
    F: FnMut(&[Vertex]) -> bool,
{
    let ok = |v: Vertex| allowed.is_none_or(|s| s.contains(v));
    let adj = |u: Vertex, v: Vertex| g.has_edge(u, v);
    let n = g.n();
    match kind {
        ObstructionKind::P3 => {
            for a in 0..n {
                if !ok(a) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if !ok(b) {
                        continue;
                    }
                    for &c in g.neighbors(b) {
                        if c > a && ok(c) && !adj(a, c) && !f(&[a, b, c]) {
                            return false;
                        }
                    }
                }
            }
        }
        ObstructionKind::I0P3 => {
            for b in 0..n {
                if !ok(b) {
                    continue;
                }
                let ns = g.neighbors(b);
                for (i, &a) in ns.iter().enumerate() {
                    if !ok(a) {
                        continue;
                    }
                    for &c in &ns[i + 1..] {
                        if ok(c) && !adj(a, c) && !f(&[b, a, c]) {
                            return false;
                        }
                    }
                }
            }
        }
        ObstructionKind::P4 => {
            for a in 0..n {
                if !ok(a) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if !ok(b) {
                        continue;
                    }
                    for &c in g.neighbors(b) {
                        if c == a || !ok(c) || adj(a, c) {
                            continue;
                        }
                        for &d in g.neighbors(c) {
                            if d > a && d != b && ok(d) && !adj(a, d) && !adj(b, d) && !f(&[a, b, c, d]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        ObstructionKind::C4 => {
            for a in 0..n {
                if !ok(a) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if b < a || !ok(b) {
                        continue;
                    }
                    for &c in g.neighbors(b) {
                        if c <= a || !ok(c) || adj(a, c) {
                            continue;
                        }
                        for &d in g.neighbors(c) {
                            if d > b && ok(d) && adj(a, d) && !adj(b, d) && !f(&[a, b, c, d]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        ObstructionKind::C5 => {
            for a in 0..n {
                if !ok(a) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if b < a || !ok(b) {
                        continue;
                    }
                    for &c in g.neighbors(b) {
                        if c <= a || !ok(c) || adj(a, c) {
                            continue;
                        }
                        for &d in g.neighbors(c) {
                            if d <= a || d == b || !ok(d) || adj(a, d) || adj(b, d) {
                                continue;
                            }
                            for &e in g.neighbors(d) {
                                if e > b && ok(e) && adj(a, e) && !adj(b, e) && !adj(c, e) && !f(&[a, b, c, d, e]) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        ObstructionKind::TwoK2 => {
            for a in 0..n {
                if !ok(a) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if b < a || !ok(b) {
                        continue;
                    }
                    for c in a + 1..n {
                        if c == b || !ok(c) || adj(a, c) || adj(b, c) {
                            continue;
                        }
                        for &d in g.neighbors(c) {
                            if d > c && ok(d) && !adj(a, d) && !adj(b, d) && !f(&[a, b, c, d]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn collect_kind(
    g: &Graph,
    kind: ObstructionKind,
    allowed: Option<&FixedBitSet>,
    limit: Option<usize>,
) -> Vec<Obstruction> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    visit(g, kind, allowed, |t| {
        out.push(Obstruction { kind, vertices: t.to_vec() });
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// All occurrences of the listed kinds, sorted by tuple then kind, truncated to `limit`.
///
/// `I0P3` in `kinds` is ignored here since it needs a marked set; see [`i0_centered_p3s`].
pub fn enumerate(g: &Graph, kinds: &[ObstructionKind], limit: Option<usize>) -> Vec<Obstruction> {
    enumerate_within(g, kinds, None, limit)
}

/// As [`enumerate`], restricted to occurrences inside `allowed`.
pub fn enumerate_within(
    g: &Graph,
    kinds: &[ObstructionKind],
    allowed: Option<&FixedBitSet>,
    limit: Option<usize>,
) -> Vec<Obstruction> {
    let mut kinds: Vec<ObstructionKind> = kinds.iter().copied().filter(|&k| k != ObstructionKind::I0P3).collect();
    kinds.sort_unstable();
    kinds.dedup();
    let mut out: Vec<Obstruction> = kinds.iter().flat_map(|&k| collect_kind(g, k, allowed, limit)).collect();
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    if let Some(l) = limit {
        out.truncate(l);
    }
    out
}

/// The first occurrence in canonical order, if any.
pub fn first(g: &Graph, kinds: &[ObstructionKind]) -> Option<Obstruction> {
    enumerate(g, kinds, Some(1)).pop()
}

pub fn is_free_of(g: &Graph, kinds: &[ObstructionKind]) -> bool {
    kinds.iter().filter(|&&k| k != ObstructionKind::I0P3).all(|&k| visit(g, k, None, |_| false))
}

pub fn vertex_in_obstruction(g: &Graph, v: Vertex, kinds: &[ObstructionKind]) -> Result<bool> {
    g.check(v)?;
    Ok(kinds.iter().filter(|&&k| k != ObstructionKind::I0P3).any(|&k| !visit(g, k, None, |t| !t.contains(&v))))
}

/// Union of the vertex sets of all occurrences inside `allowed`.
pub fn obstructed_vertices(g: &Graph, kinds: &[ObstructionKind], allowed: Option<&FixedBitSet>) -> FixedBitSet {
    let mut hit = FixedBitSet::with_capacity(g.n());
    for &k in kinds.iter().filter(|&&k| k != ObstructionKind::I0P3) {
        visit(g, k, allowed, |t| {
            for &v in t {
                hit.insert(v);
            }
            true
        });
    }
    hit
}

/// The two candidate edges `{v1,v3}` and `{v2,v4}` of one induced P4 or C4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub source: Obstruction,
    pub first: EdgePair,
    pub second: EdgePair,
}

pub fn candidate_pairs(g: &Graph) -> Vec<CandidatePair> {
    enumerate(g, TRIVIALLY_PERFECT, None)
        .into_iter()
        .map(|o| {
            let t = &o.vertices;
            let (first, second) = (EdgePair::of(t[0], t[2]), EdgePair::of(t[1], t[3]));
            CandidatePair { source: o, first, second }
        })
        .collect()
}

/// Number of P4/C4 occurrences having `e` as a candidate edge.
pub fn candidate_multiplicity(g: &Graph, e: EdgePair) -> usize {
    candidate_counts(g).get(&e).copied().unwrap_or(0)
}

/// Candidate multiplicity of every non-edge that has one.
pub fn candidate_counts(g: &Graph) -> BTreeMap<EdgePair, usize> {
    let mut counts = BTreeMap::new();
    for kind in [ObstructionKind::P4, ObstructionKind::C4] {
        visit(g, kind, None, |t| {
            *counts.entry(EdgePair::of(t[0], t[2])).or_insert(0) += 1;
            *counts.entry(EdgePair::of(t[1], t[3])).or_insert(0) += 1;
            true
        });
    }
    counts
}

/// Induced P3s whose middle vertex lies in `i0`, as `[center, end, end]`.
pub fn i0_centered_p3s(g: &Graph, i0: &FixedBitSet) -> Vec<Obstruction> {
    let mut out = Vec::new();
    visit(g, ObstructionKind::I0P3, None, |t| {
        if i0.contains(t[0]) {
            out.push(Obstruction { kind: ObstructionKind::I0P3, vertices: t.to_vec() });
        }
        true
    });
    out
}

/// True iff every induced C4 and C5 through `v` meets `i0`.
pub fn c4_c5_avoiding(g: &Graph, v: Vertex, i0: &FixedBitSet) -> Result<bool> {
    g.check(v)?;
    if i0.contains(v) {
        return Ok(true);
    }
    let mut outside = FixedBitSet::with_capacity(g.n());
    outside.insert_range(..);
    outside.difference_with(i0);
    Ok([ObstructionKind::C4, ObstructionKind::C5].into_iter().all(|k| visit(g, k, Some(&outside), |t| !t.contains(&v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, families};
    use ObstructionKind::*;

    #[test]
    fn canonical_tuples() {
        let c4 = families::cycle(4);
        let found = enumerate(&c4, &[C4], None);
        assert_eq!(found, vec![Obstruction { kind: C4, vertices: vec![0, 1, 2, 3] }]);
        let p4 = families::path(4);
        assert_eq!(enumerate(&p4, &[P4], None)[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(enumerate(&p4, &[P3], None).len(), 2);
        let c5 = families::cycle(5);
        assert_eq!(enumerate(&c5, &[C5], None)[0].vertices, vec![0, 1, 2, 3, 4]);
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(enumerate(&two_k2, &[TwoK2], None)[0].vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn c5_has_no_2k2_or_c4() {
        assert!(enumerate(&families::cycle(5), &[TwoK2, C4], None).is_empty());
    }

    #[test]
    fn fig4_obstructions() {
        let g = gen::paper_figure("fig4").unwrap();
        let c4s = enumerate(&g, &[C4], None);
        assert_eq!(c4s.len(), 1);
        assert_eq!(c4s[0].vertices, vec![0, 1, 2, 3]);
        assert!(enumerate(&g, &[TwoK2], None).is_empty());
        assert!(!vertex_in_obstruction(&g, 5, PSEUDO_SPLIT).unwrap());
    }

    #[test]
    fn vertex_queries() {
        let star = families::star(3);
        assert!(!vertex_in_obstruction(&star, 0, TRIVIALLY_PERFECT).unwrap());
        assert!(vertex_in_obstruction(&families::path(4), 0, TRIVIALLY_PERFECT).unwrap());
        assert!(vertex_in_obstruction(&star, 9, TRIVIALLY_PERFECT).is_err());
    }

    #[test]
    fn candidates() {
        let pairs = candidate_pairs(&families::path(4));
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].first, pairs[0].second), (EdgePair::of(0, 2), EdgePair::of(1, 3)));
        assert!(candidate_pairs(&families::complete(3)).is_empty());
        // u=0, a=1, v=2, b1=3, b2=4
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(candidate_multiplicity(&g, EdgePair::of(0, 2)), 2);
    }

    #[test]
    fn i0_structures() {
        let p3 = families::path(3);
        let i0 = p3.vertex_set(&[1]);
        let found = i0_centered_p3s(&p3, &i0);
        assert_eq!(found, vec![Obstruction { kind: I0P3, vertices: vec![1, 0, 2] }]);
        let c4 = families::cycle(4);
        assert!(!c4_c5_avoiding(&c4, 0, &FixedBitSet::with_capacity(4)).unwrap());
        assert!(c4_c5_avoiding(&c4, 0, &c4.vertex_set(&[2])).unwrap());
    }

    #[test]
    fn obstruction_edges() {
        let o = Obstruction { kind: C4, vertices: vec![0, 1, 2, 3] };
        assert_eq!(o.edges(), vec![EdgePair::of(0, 1), EdgePair::of(0, 3), EdgePair::of(1, 2), EdgePair::of(2, 3)]);
        assert_eq!(o.non_edges(), vec![EdgePair::of(0, 2), EdgePair::of(1, 3)]);
    }
}
