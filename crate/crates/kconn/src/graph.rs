//! Undirected simple graphs on a small, fixed-capacity vertex range.
//!
//! Adjacency is stored as one bitset per vertex, which keeps neighborhood
//! intersections, degree counts and induced-subgraph extraction cheap at the
//! scales this crate targets.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Hard cap on vertex count. Graphs this size are still fine for the dense
/// spectral and flow routines; the graph6 codec has its own stricter cap.
pub const MAX_VERTICES: usize = 512;

const WORDS: usize = MAX_VERTICES / 64;

/// A set of vertex indices, backed by a fixed-width bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    pub fn new() -> Self {
        Self::EMPTY
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::EMPTY;
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < MAX_VERTICES);
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] |= other.words[i];
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] &= other.words[i];
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] &= !other.words[i];
        }
        out
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Smallest element, if any.
    pub fn min_elem(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterate elements in ascending order.
    pub fn iter(&self) -> SetBits {
        SetBits {
            words: self.words,
            word_idx: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Self::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

pub struct SetBits {
    words: [u64; WORDS],
    word_idx: usize,
    current: u64,
}

impl Iterator for SetBits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= WORDS {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop edge at vertex {0} not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("induced subgraph requires a nonempty vertex set")]
    EmptySubset,
    #[error("invalid {family} parameters: {reason}")]
    InvalidFamily {
        family: &'static str,
        reason: String,
    },
}

/// An undirected simple graph with vertices 0..n-1.
///
/// Invariants maintained by every constructor: the adjacency relation is
/// symmetric and irreflexive, so the edge count is always an exact integer.
/// Values are immutable after construction; edits go through [`Graph::with_edge`]
/// and [`Graph::without_edge`], which return modified copies.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Build a graph from an explicit edge list. Duplicate pairs collapse to a
    /// single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::from_edges(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        self.adj[v].intersection_len(s)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|v| self.degree(v)).sum();
        debug_assert!(total.is_multiple_of(2));
        total / 2
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges as (u, v) pairs with u < v, in ascending lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs
    }

    /// Copy of this graph with the edge (u, v) added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        Ok(g)
    }

    /// Copy of this graph with the edge (u, v) removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u < self.n && v < self.n);
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        g
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let total: usize = s.iter().map(|v| self.adj[v].intersection_len(s)).sum();
        total / 2
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// The two sets must be disjoint.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        debug_assert!(a.intersection(b).is_empty());
        a.iter().map(|v| self.adj[v].intersection_len(b)).sum()
    }

    /// Induced subgraph on `s`, relabeled 0..|s|-1 preserving ascending
    /// original index order.
    pub fn induced(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let labels: Vec<usize> = s.iter().collect();
        debug_assert!(*labels.last().unwrap() < self.n);
        let mut adj = vec![VertexSet::EMPTY; labels.len()];
        for (i, &u) in labels.iter().enumerate() {
            for (j, &v) in labels.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Ok(Graph {
            n: labels.len(),
            adj,
        })
    }

    /// Connected components, each as a set of original vertex labels.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let comp = self.component_of(start, &self.vertex_set());
            seen = seen.union(&comp);
            comps.push(comp);
        }
        comps
    }

    /// Connected component of `start` inside the vertex subset `within`.
    pub fn component_of(&self, start: usize, within: &VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut comp = VertexSet::singleton(start);
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            let frontier = self.adj[u].intersection(within).difference(&comp);
            for v in frontier.iter() {
                comp.insert(v);
                queue.push(v);
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0, &self.vertex_set()).len() == self.n
    }

    /// Whether the vertices of `within` induce a connected subgraph.
    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        match within.min_elem() {
            None => true,
            Some(start) => self.component_of(start, within) == *within,
        }
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == self.n - 1)
    }

    /// Structural test for being (isomorphic to) the complete bipartite graph
    /// with parts of sizes k and n-k. Works at any n, unlike the canonical
    /// form which is restricted to tiny graphs.
    pub fn is_complete_bipartite_with_part(&self, k: usize) -> bool {
        let n = self.n;
        if k == 0 || k >= n {
            return false;
        }
        if self.edge_count() != k * (n - k) {
            return false;
        }
        // A part of K_{k,n-k} is recoverable as the neighborhood of any vertex
        // of the other part; seed with the neighborhood of vertex 0.
        let side_b = self.adj[0];
        let side_a = self.vertex_set().difference(&side_b);
        let (small, large) = if side_a.len() <= side_b.len() {
            (side_a, side_b)
        } else {
            (side_b, side_a)
        };
        if small.len() != k.min(n - k) || large.len() != k.max(n - k) {
            return false;
        }
        small.iter().all(|v| self.adj[v] == large) && large.iter().all(|v| self.adj[v] == small)
    }

    // --- named families ---

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        Ok(g)
    }

    /// Complete bipartite graph K_{k,n-k}; vertices 0..k-1 form the k-side.
    pub fn complete_bipartite(k: usize, n: usize) -> Result<Graph, GraphError> {
        if k == 0 || k >= n {
            return Err(GraphError::InvalidFamily {
                family: "complete_bipartite",
                reason: format!("requires 1 <= k < n, got k={k}, n={n}"),
            });
        }
        let mut g = Graph::empty(n)?;
        for u in 0..k {
            for v in k..n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        Ok(g)
    }

    /// Cycle C_n (n >= 3).
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidFamily {
                family: "cycle",
                reason: format!("requires n >= 3, got n={n}"),
            });
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Path P_n on n vertices.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Star K_{1,n-1} with center 0.
    pub fn star(n: usize) -> Result<Graph, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidFamily {
                family: "star",
                reason: format!("requires n >= 2, got n={n}"),
            });
        }
        Graph::complete_bipartite(1, n)
    }

    /// K_{n-1} plus one new vertex (labeled n-1) of degree k, adjacent to
    /// vertices 0..k-1.
    pub fn k_appended(n: usize, k: usize) -> Result<Graph, GraphError> {
        if n < 2 || k == 0 || k > n - 1 {
            return Err(GraphError::InvalidFamily {
                family: "k_appended",
                reason: format!("requires n >= 2 and 1 <= k <= n-1, got n={n}, k={k}"),
            });
        }
        let mut g = Graph::complete(n - 1)?;
        g.n = n;
        g.adj.push(VertexSet::EMPTY);
        for v in 0..k {
            g.adj[v].insert(n - 1);
            g.adj[n - 1].insert(v);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_connected());
        assert!(g.is_complete());
    }

    #[test]
    fn single_edge_degrees() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::NoVertices));
        assert!(matches!(
            Graph::from_edges(MAX_VERTICES + 1, &[]),
            Err(GraphError::TooManyVertices(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::LoopEdge(1))
        );
    }

    #[test]
    fn complete_bipartite_shape() {
        let g = Graph::complete_bipartite(2, 7).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.degree_sequence(), vec![5, 5, 2, 2, 2, 2, 2]);
        assert!(g.is_complete_bipartite_with_part(2));
        assert!(g.is_complete_bipartite_with_part(5));
        assert!(!g.is_complete_bipartite_with_part(3));
    }

    #[test]
    fn family_parameter_validation() {
        assert!(matches!(
            Graph::complete_bipartite(0, 5),
            Err(GraphError::InvalidFamily { .. })
        ));
        assert!(matches!(
            Graph::complete_bipartite(5, 5),
            Err(GraphError::InvalidFamily { .. })
        ));
        assert!(matches!(
            Graph::cycle(2),
            Err(GraphError::InvalidFamily { .. })
        ));
        assert!(matches!(
            Graph::k_appended(4, 4),
            Err(GraphError::InvalidFamily { .. })
        ));
        assert_eq!(Graph::star(2).unwrap().edge_count(), 1);
    }

    #[test]
    fn cycle_is_two_regular() {
        let g = Graph::cycle(6).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn k_appended_counts() {
        let g = Graph::k_appended(8, 3).unwrap();
        assert_eq!(g.edge_count(), 21 + 3);
        assert_eq!(g.degree(7), 3);
        assert!(g.has_edge(7, 0) && g.has_edge(7, 1) && g.has_edge(7, 2));
        assert!(!g.has_edge(7, 3));
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = Graph::complete_bipartite(2, 7).unwrap();
        // 2-side plus two right vertices: K_{2,2}.
        let s: VertexSet = [0, 1, 2, 3].into_iter().collect();
        let h = g.induced(&s).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 4);
        assert!(h.is_complete_bipartite_with_part(2));

        // Full set: same graph.
        let full = g.induced(&g.vertex_set()).unwrap();
        assert_eq!(full.edges(), g.edges());

        // Three consecutive cycle vertices: P_3.
        let c6 = Graph::cycle(6).unwrap();
        let s: VertexSet = [0, 1, 2].into_iter().collect();
        let p = c6.induced(&s).unwrap();
        assert_eq!(p.edge_count(), 2);

        assert_eq!(g.induced(&VertexSet::EMPTY), Err(GraphError::EmptySubset));
    }

    #[test]
    fn components_of_disjoint_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
        assert!(!g.is_connected());
    }

    #[test]
    fn vertex_set_ops() {
        let a: VertexSet = [1, 3, 5].into_iter().collect();
        let b: VertexSet = [3, 4].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 5]);
        assert!(VertexSet::singleton(3).is_subset_of(&a));
        assert_eq!(a.min_elem(), Some(1));
        assert_eq!(VertexSet::EMPTY.min_elem(), None);
    }
}
