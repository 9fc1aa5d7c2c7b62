//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    /// Normalizes `{u, v}`. Panics on a loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "loops are not edges");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: usize) -> Option<usize> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A set of edges. Used both for factor cuts and for cuts of a product graph,
/// where the endpoints are linearized product vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeCut(BTreeSet<Edge>);

impl EdgeCut {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    /// Cut-list line format: space separated `u-v` tokens.
    pub fn to_line(&self) -> String {
        self.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let mut cut = EdgeCut::new();
        for tok in line.split_whitespace() {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| Error::CutFormat(format!("expected u-v, got {tok:?}")))?;
            let u = parse_id(a)?;
            let v = parse_id(b)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !cut.insert(Edge::new(u, v)) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(cut)
    }
}

fn parse_id(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::CutFormat(format!("bad vertex id {s:?}")))
}

impl FromIterator<Edge> for EdgeCut {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeCut(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeCut {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Simple undirected loopless graph. Immutable once built; equality is by
/// vertex count and identical edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !set.insert(Edge::new(u, v)) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    pub(crate) fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edge_set(n, BTreeSet::new())
    }

    pub fn complete(n: usize) -> Self {
        let set = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge(u, v)))
            .collect();
        Self::from_edge_set(n, set)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!("cycle needs n >= 3, got {n}")));
        }
        let set = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
        Ok(Self::from_edge_set(n, set))
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("path needs n >= 1".into()));
        }
        let set = (1..n).map(|i| Edge(i - 1, i)).collect();
        Ok(Self::from_edge_set(n, set))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParameters(format!(
                "complete bipartite needs nonempty parts, got {a},{b}"
            )));
        }
        let set = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| Edge(u, v)))
            .collect();
        Ok(Self::from_edge_set(a + b, set))
    }

    /// `l K_2`: edges `{2i, 2i+1}`.
    pub fn matching(l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidParameters("matching needs l >= 1".into()));
        }
        let set = (0..l).map(|i| Edge(2 * i, 2 * i + 1)).collect();
        Ok(Self::from_edge_set(2 * l, set))
    }

    /// `a ∨ b`: `a` on `0..|a|`, `b` shifted by `|a|`, plus every cross edge.
    pub fn join(a: &Graph, b: &Graph) -> Self {
        let mut set: BTreeSet<Edge> = a.edges.iter().copied().collect();
        set.extend(b.edges.iter().map(|e| Edge(e.0 + a.n, e.1 + a.n)));
        for u in 0..a.n {
            for v in 0..b.n {
                set.insert(Edge(u, a.n + v));
            }
        }
        Self::from_edge_set(a.n + b.n, set)
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Self {
        let mut set: BTreeSet<Edge> = a.edges.iter().copied().collect();
        set.extend(b.edges.iter().map(|e| Edge(e.0 + a.n, e.1 + a.n)));
        Self::from_edge_set(a.n + b.n, set)
    }

    pub fn complement(&self) -> Self {
        let set = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| Edge(u, v)))
            .filter(|e| !self.has_edge(e.0, e.1))
            .collect();
        Self::from_edge_set(self.n, set)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order; positions are stable edge ids.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).min().ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).max().ok_or(Error::EmptyGraph)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.component_count() == 1)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Connected component label per vertex, labels numbered in order of
    /// their smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_without(&EdgeCut::new())
    }

    /// Component labels of `self - removed`.
    pub fn component_labels_without(&self, removed: &EdgeCut) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX && !removed.contains(&Edge::new(u, w)) {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_count_without(&EdgeCut::new())
    }

    pub fn component_count_without(&self, removed: &EdgeCut) -> usize {
        self.component_labels_without(removed)
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// `true` when removing `cut` leaves more than one component.
    pub fn disconnects(&self, cut: &EdgeCut) -> bool {
        self.n > 1 && self.component_count_without(cut) > 1
    }

    pub fn remove_edges(&self, cut: &EdgeCut) -> Graph {
        let set = self
            .edges
            .iter()
            .copied()
            .filter(|e| !cut.contains(e))
            .collect();
        Self::from_edge_set(self.n, set)
    }

    /// All edges incident with `v`.
    pub fn star(&self, v: usize) -> Result<EdgeCut> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().map(|&w| Edge::new(v, w)).collect())
    }

    /// Adds vertex `n` adjacent to `neighbors`.
    pub fn with_new_vertex(&self, neighbors: &[usize]) -> Result<Graph> {
        let n = self.n + 1;
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        for &w in neighbors {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.n });
            }
            set.insert(Edge(w, self.n));
        }
        Ok(Self::from_edge_set(n, set))
    }

    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let set = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.0], perm[e.1]))
            .collect();
        Self::from_edge_set(self.n, set)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    pub fn check_cut(&self, cut: &EdgeCut) -> Result<()> {
        match cut.iter().find(|e| !self.contains_edge(*e)) {
            Some(e) => Err(Error::NotAnEdge(e.0, e.1)),
            None => Ok(()),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    /// `K_2` exactly (two vertices, one edge).
    pub fn is_k2(&self) -> bool {
        self.n == 2 && self.edges.len() == 1
    }
}

/// Named constructions, composable through join and disjoint union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    EmptyGraph(usize),
    CompleteBipartite(usize, usize),
    Matching(usize),
    Join(Box<GraphFamily>, Box<GraphFamily>),
    DisjointUnion(Box<GraphFamily>, Box<GraphFamily>),
}

impl GraphFamily {
    pub fn join(a: GraphFamily, b: GraphFamily) -> Self {
        GraphFamily::Join(Box::new(a), Box::new(b))
    }

    pub fn disjoint_union(a: GraphFamily, b: GraphFamily) -> Self {
        GraphFamily::DisjointUnion(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<Graph> {
        use GraphFamily::*;
        match self {
            Complete(n) | EmptyGraph(n) if *n == 0 => Err(Error::InvalidParameters(format!(
                "{self:?} needs at least one vertex"
            ))),
            Complete(n) => Ok(Graph::complete(*n)),
            EmptyGraph(n) => Ok(Graph::empty(*n)),
            Cycle(n) => Graph::cycle(*n),
            Path(n) => Graph::path(*n),
            CompleteBipartite(a, b) => Graph::complete_bipartite(*a, *b),
            Matching(l) => Graph::matching(*l),
            Join(a, b) => Ok(Graph::join(&a.build()?, &b.build()?)),
            DisjointUnion(a, b) => Ok(Graph::disjoint_union(&a.build()?, &b.build()?)),
        }
    }
}
