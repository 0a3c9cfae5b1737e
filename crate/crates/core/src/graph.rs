//! Simple undirected graphs with stable vertex labels.
//!
//! Vertex ids are dense (`0..n`) and are compacted whenever vertices are
//! removed. Every vertex also carries a label, normally its id in the
//! original input, which survives removals so that traces and solutions can
//! always be expressed in terms of the input graph.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex id inside one particular [`Graph`] value.
pub type Vertex = usize;

/// Stable vertex name; unchanged by vertex removal or compaction.
pub type Label = usize;

/// Unordered pair of distinct vertices, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgePair(Vertex, Vertex);

impl EdgePair {
    pub fn new(u: Vertex, v: Vertex) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(EdgePair(u, v)),
            std::cmp::Ordering::Greater => Ok(EdgePair(v, u)),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(u)),
        }
    }

    /// Panics if `u == v`; for internal callers that already know the pair is proper.
    pub(crate) fn of(u: Vertex, v: Vertex) -> Self {
        debug_assert_ne!(u, v);
        if u < v {
            EdgePair(u, v)
        } else {
            EdgePair(v, u)
        }
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

#[derive(Clone)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    nbrs: Vec<Vec<Vertex>>,
    labels: Vec<Label>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.nbrs == other.nbrs
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("labels", &self.labels)
            .field("edges", &self.edges().map(|e| (e.0, e.1)).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            rows: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
            nbrs: vec![Vec::new(); n],
            labels: (0..n).collect(),
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Same adjacency, new labels. Labels must be injective.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::LabelCount { expected: self.n(), found: labels.len() });
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            if seen.insert(l, v).is_some() {
                return Err(Error::DuplicateLabel(l));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn check_all(&self, vs: &[Vertex]) -> Result<()> {
        vs.iter().try_for_each(|&v| self.check(v))
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn max_label(&self) -> Option<Label> {
        self.labels.iter().copied().max()
    }

    /// Linear scan; use [`Graph::label_index`] for repeated lookups.
    pub fn vertex_of(&self, label: Label) -> Option<Vertex> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn label_index(&self) -> HashMap<Label, Vertex> {
        self.labels.iter().enumerate().map(|(v, &l)| (l, v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs[v].len()
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert_ne!(u, v, "self-loop at {u}");
        if self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        let pos = self.nbrs[u].binary_search(&v).unwrap_err();
        self.nbrs[u].insert(pos, v);
        let pos = self.nbrs[v].binary_search(&u).unwrap_err();
        self.nbrs[v].insert(pos, u);
        self.m += 1;
        true
    }

    /// Returns `false` if the edge was absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u == v || !self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
        if let Ok(pos) = self.nbrs[u].binary_search(&v) {
            self.nbrs[u].remove(pos);
        }
        if let Ok(pos) = self.nbrs[v].binary_search(&u) {
            self.nbrs[v].remove(pos);
        }
        self.m -= 1;
        true
    }

    pub fn toggle_edge(&mut self, u: Vertex, v: Vertex) {
        if !self.remove_edge(u, v) {
            self.add_edge(u, v);
        }
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self, label: Label) -> Vertex {
        let n = self.n() + 1;
        for row in &mut self.rows {
            row.grow(n);
        }
        self.rows.push(FixedBitSet::with_capacity(n));
        self.nbrs.push(Vec::new());
        self.labels.push(label);
        n - 1
    }

    /// Keeps the vertices in `keep`, compacting ids in increasing order.
    /// Returns the old-id to new-id map.
    pub fn retain(&mut self, keep: &FixedBitSet) -> Vec<Option<Vertex>> {
        let n = self.n();
        let mut map = vec![None; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if keep.contains(v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::new(next);
        g.labels = (0..n).filter(|&v| keep.contains(v)).map(|v| self.labels[v]).collect();
        for u in 0..n {
            let Some(nu) = map[u] else { continue };
            for &v in &self.nbrs[u] {
                if u < v {
                    if let Some(nv) = map[v] {
                        g.add_edge(nu, nv);
                    }
                }
            }
        }
        *self = g;
        map
    }

    pub fn remove_vertices(&mut self, vs: &[Vertex]) -> Vec<Option<Vertex>> {
        let mut keep = FixedBitSet::with_capacity(self.n());
        keep.insert_range(..);
        for &v in vs {
            keep.set(v, false);
        }
        self.retain(&keep)
    }

    pub fn induced_subgraph(&self, vs: &[Vertex]) -> Graph {
        let mut keep = FixedBitSet::with_capacity(self.n());
        for &v in vs {
            keep.insert(v);
        }
        let mut g = self.clone();
        g.retain(&keep);
        g
    }

    /// Inverts adjacency off the diagonal; labels are preserved.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        g.labels = self.labels.clone();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Edges `{u, v}` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| EdgePair(u, v)))
    }

    /// Same as [`Graph::edges`] but with labels instead of ids, each pair sorted.
    pub fn labelled_edges(&self) -> Vec<(Label, Label)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|e| {
                let (a, b) = (self.labels[e.0], self.labels[e.1]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn non_edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (u + 1..n).filter(move |&v| !self.has_edge(u, v)).map(move |v| EdgePair(u, v)))
    }

    /// Vertex ids sorted by label.
    pub fn by_label(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.vertices().collect();
        vs.sort_by_key(|&v| self.labels[v]);
        vs
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> FixedBitSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    pub fn vertex_set(&self, vs: &[Vertex]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n());
        for &v in vs {
            s.insert(v);
        }
        s
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn boundary_degree(&self, set: &[Vertex]) -> Result<usize> {
        self.check_all(set)?;
        let inside = self.vertex_set(set);
        Ok(self.boundary_degree_of(&inside))
    }

    pub(crate) fn boundary_degree_of(&self, inside: &FixedBitSet) -> usize {
        inside.ones().map(|u| self.nbrs[u].iter().filter(|&&v| !inside.contains(v)).count()).sum()
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &FixedBitSet) -> usize {
        set.ones().map(|u| self.rows[u].intersection(set).filter(|&v| v > u).count()).sum()
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_clique_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|u| {
            let mut others = set.clone();
            others.set(u, false);
            others.is_subset(&self.rows[u])
        })
    }

    pub fn is_independent_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|u| self.rows[u].is_disjoint(set))
    }

    pub fn is_simplicial(&self, v: Vertex) -> Result<bool> {
        self.check(v)?;
        Ok(self.is_clique(&self.nbrs[v]))
    }

    pub fn is_universal(&self, v: Vertex) -> Result<bool> {
        self.check(v)?;
        Ok(self.degree(v) + 1 == self.n())
    }

    /// All pairs `(u, v)`, `u < v`, with `N[u] = N[v]`.
    pub fn true_twins(&self) -> Vec<(Vertex, Vertex)> {
        let closed: Vec<FixedBitSet> = self.vertices().map(|v| self.closed_neighborhood(v)).collect();
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.nbrs[u] {
                if u < v && closed[u] == closed[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `N(M) = N(v) \ M` for every `v` in `M`.
    pub fn is_module(&self, module: &[Vertex]) -> Result<bool> {
        self.check_all(module)?;
        let set = self.vertex_set(module);
        let mut outside: Option<FixedBitSet> = None;
        for v in set.ones() {
            let mut nv = self.rows[v].clone();
            nv.difference_with(&set);
            match &outside {
                None => outside = Some(nv),
                Some(o) if *o != nv => return Ok(false),
                Some(_) => {}
            }
        }
        Ok(true)
    }

    /// Applies symmetric difference with `pairs` (ids); used to apply deletion or completion sets.
    pub fn with_toggled(&self, pairs: &[EdgePair]) -> Graph {
        let mut g = self.clone();
        for e in pairs {
            g.toggle_edge(e.0, e.1);
        }
        g
    }

    /// Adjacency as a bit string over pairs `u < v`; only meaningful for `n <= 11`.
    pub fn adjacency_code(&self) -> u64 {
        let n = self.n();
        assert!(n * (n.saturating_sub(1)) / 2 <= 64, "adjacency code needs n <= 11");
        let mut code = 0u64;
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    pub fn from_adjacency_code(n: usize, code: u64) -> Graph {
        let mut g = Graph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if code >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }
}
