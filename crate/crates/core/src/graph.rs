//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics on a self-loop.
    pub fn new(u: Vertex, v: Vertex) -> Edge {
        assert_ne!(u, v, "self-loop {u}-{v}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, w: Vertex) -> bool {
        self.0 == w || self.1 == w
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Sets of edges are kept ordered so every report and witness is reproducible.
pub type EdgeSet = BTreeSet<Edge>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge(Edge),
}

/// Immutable simple graph.
///
/// Neighbour lists are sorted; membership queries go through a hashed edge
/// set so adjacency tests are O(1).
#[derive(Clone, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
    lookup: HashSet<Edge>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            lookup: HashSet::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicates collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert(Edge::new(u, v));
        }
        Ok(Graph::from_edge_set(n, set))
    }

    /// Caller guarantees every edge is in range.
    pub(crate) fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let lookup = edges.iter().copied().collect();
        Graph {
            n,
            adj,
            edges,
            lookup,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.lookup.contains(&Edge::new(u, v))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.lookup.contains(&e)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `G - F`: same vertices, edges of `f` removed.
    pub fn delete_edges(&self, f: &EdgeSet) -> Result<Graph, GraphError> {
        if let Some(bad) = f.iter().find(|e| !self.contains_edge(**e)) {
            return Err(GraphError::NotAnEdge(*bad));
        }
        let kept = self.edges.iter().copied().filter(|e| !f.contains(e)).collect();
        Ok(Graph::from_edge_set(self.n, kept))
    }

    /// `G[S]` with vertices renumbered in ascending order of their old ids.
    ///
    /// Returns the subgraph and the new-to-old id map.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut keep: Vec<Vertex> = s.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            new_id[v] = i;
        }
        let mut set = BTreeSet::new();
        for &v in &keep {
            for &w in &self.adj[v] {
                if v < w && new_id[w] != usize::MAX {
                    set.insert(Edge::new(new_id[v], new_id[w]));
                }
            }
        }
        Ok((Graph::from_edge_set(keep.len(), set), keep))
    }

    /// True iff the neighbourhood of `v` is a clique.
    pub fn is_simplicial(&self, v: Vertex) -> bool {
        self.is_clique(&self.adj[v])
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// `E(S)`: edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &[Vertex]) -> EdgeSet {
        let mut inside = vec![false; self.n];
        for &v in s {
            inside[v] = true;
        }
        self.edges
            .iter()
            .copied()
            .filter(|e| inside[e.0] && inside[e.1])
            .collect()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Small named graphs used throughout the tests and generators.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn claw() -> Graph {
        star(3)
    }

    /// Diamond on `u=0, v=1, w=2, x=3`: edges uv, uw, vw, vx, wx.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// `copies` vertex-disjoint claws; claw `i` has center `4i`.
    pub fn disjoint_claws(copies: usize) -> Graph {
        let edges = (0..copies).flat_map(|i| (1..4).map(move |j| (4 * i, 4 * i + j)));
        Graph::from_edges(4 * copies, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(edges: &[(Vertex, Vertex)]) -> EdgeSet {
        edges.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    #[test]
    fn k4_minus_edge_is_diamond() {
        let g = complete(4).delete_edges(&set(&[(0, 3)])).unwrap();
        assert_eq!(g, diamond());
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = cycle(5);
        assert_eq!(g.delete_edges(&EdgeSet::new()).unwrap(), g);
    }

    #[test]
    fn diamond_minus_middle_edge_is_c4() {
        let g = diamond().delete_edges(&set(&[(1, 2)])).unwrap();
        assert_eq!(g.edge_set(), set(&[(0, 1), (0, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn delete_non_edge_is_rejected() {
        let err = path(3).delete_edges(&set(&[(0, 2)])).unwrap_err();
        assert_eq!(err, GraphError::NotAnEdge(Edge::new(0, 2)));
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = complete(4).induced_subgraph(&[3, 1, 2]).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(map, vec![1, 2, 3]);

        let (e, _) = claw().induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(e, path(2));

        let (p4, _) = cycle(5).induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(p4, path(4));

        assert!(claw().induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn simplicial_vertices() {
        assert!((0..3).all(|v| complete(3).is_simplicial(v)));
        assert!(!path(3).is_simplicial(1));
        assert!(path(3).is_simplicial(0));
        assert!(!claw().is_simplicial(0));
        assert!(Graph::empty(1).is_simplicial(0));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, n: 2 }
        );
        assert_eq!(Graph::from_edges(2, [(1, 1)]).unwrap_err(), GraphError::SelfLoop(1));
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn edges_within_subset() {
        assert_eq!(complete(4).edges_within(&[0, 2, 3]).len(), 3);
        assert!(claw().edges_within(&[1, 2, 3]).is_empty());
    }
}
