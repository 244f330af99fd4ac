//! Undirected simple graphs on dense vertex indices `0..n`, plus generators,
//! the edge-list text format and the brute-force combinatorial oracles
//! (maximum cut, acyclic-orientation count, minimum-degree core).

mod acyclic;
mod core_peel;
mod generate;
mod io;
mod maxcut;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitMatrix;

pub use acyclic::{count_acyclic_orientations, ACYCLIC_COUNT_EDGE_LIMIT};
pub use core_peel::{min_degree_core, DegreeCore};
pub use generate::{generate, GeneratorKind, GeneratorSpec};
pub use io::{parse_graph, serialize_graph, ParseError};
pub use maxcut::{max_cut, Cut, MAX_CUT_VERTEX_LIMIT};

/// An unordered vertex pair, normalized so that `.0 < .1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    /// Normalizes the pair; `None` for a loop.
    pub fn new(a: usize, b: usize) -> Option<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge(a, b)),
            std::cmp::Ordering::Greater => Some(Edge(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    #[inline]
    pub fn lo(self) -> usize {
        self.0
    }

    #[inline]
    pub fn hi(self) -> usize {
        self.1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([a, b]: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::new(a, b).ok_or_else(|| format!("loop edge [{a}, {b}]"))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("{what} limited to {limit}, got {actual}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}

/// Undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: BitMatrix,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range vertices.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = BitMatrix::new(n);
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            let e = Edge::new(a, b).ok_or(GraphError::Loop(a))?;
            if adj.get(a, b) {
                return Err(GraphError::DuplicateEdge(e));
            }
            adj.set(a, b);
            adj.set(b, a);
            edges.push(e);
        }
        edges.sort_unstable();
        Ok(Self { n, edges, adj })
    }

    /// Like [`Graph::new`] but merges duplicates and drops loops.
    pub fn simplified(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = BitMatrix::new(n);
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if let Some(e) = Edge::new(a, b) {
                if !adj.get(a, b) {
                    adj.set(a, b);
                    adj.set(b, a);
                    edges.push(e);
                }
            }
        }
        edges.sort_unstable();
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: BitMatrix::new(n),
        }
    }

    /// Vertex count `v(G)`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count `e(G)`.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj.get(a, b)
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row_iter(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Induced subgraph on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pairs = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adj.get(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Graph::simplified(vertices.len(), pairs)
    }

    /// Drops isolated vertices; returns the compacted graph and the map from
    /// new index to old index.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        (self.induced(&keep), keep)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::simplified(self.n, self.edges.iter().map(|e| (perm[e.0], perm[e.1])))
    }

    /// `G - e`.
    pub fn delete_edge(&self, e: Edge) -> Graph {
        Graph::simplified(self.n, self.edges.iter().filter(|&&f| f != e).map(|f| (f.0, f.1)))
    }

    /// `G / e` kept simple: `e.hi()` is merged into `e.lo()`, parallel edges
    /// collapse, and vertices above `e.hi()` shift down by one.
    pub fn contract_edge(&self, e: Edge) -> Graph {
        let (keep, gone) = (e.0, e.1);
        let map = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        Graph::simplified(
            self.n - 1,
            self.edges.iter().filter(|&&f| f != e).map(|f| (map(f.0), map(f.1))),
        )
    }

    /// Number of triangles, by enumeration.
    pub fn triangle_count(&self) -> usize {
        self.edges
            .iter()
            .map(|e| self.neighbors(e.1).filter(|&c| c > e.1 && self.adj.get(e.0, c)).count())
            .sum()
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Short stable fingerprint of the edge-list serialization.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(serialize_graph(self).as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::new(4, [(2, 0), (3, 1), (1, 2)]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.has_edge(a, b), g.has_edge(b, a));
            }
        }
        assert_eq!(g.edges(), &[Edge(0, 2), Edge(1, 2), Edge(1, 3)]);
        assert_eq!(g.edge_index(Edge(1, 3)), Some(2));
    }

    #[test]
    fn contraction_merges_parallel_edges() {
        // triangle 0-1-2: contracting 0-1 leaves a single edge
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = k3.contract_edge(Edge(0, 1));
        assert_eq!(c.n(), 2);
        assert_eq!(c.m(), 1);
    }

    #[test]
    fn triangles_in_k5() {
        let pairs = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)));
        let k5 = Graph::new(5, pairs).unwrap();
        assert_eq!(k5.triangle_count(), 10);
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4.triangle_count(), 0);
    }

    #[test]
    fn isolated_vertices_stripped() {
        let g = Graph::new(5, [(1, 3)]).unwrap();
        let (h, map) = g.without_isolated();
        assert_eq!(h.n(), 2);
        assert_eq!(map, vec![1, 3]);
        assert_eq!(g.components().len(), 4);
    }
}
