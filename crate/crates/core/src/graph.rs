//! Graphs, non-backtracking walks and the walk algebra.
//!
//! A [`Graph`] is the public street map: vertices, edges and adjacency, but no
//! weights. A [`WeightedGraph`] pairs a map with its hidden edge weights. Walks
//! are plain vertex sequences; whether a walk is valid is always a question
//! asked of a particular graph.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::Rational;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("expected {expected} weights, got {actual}")]
    WeightCount { expected: usize, actual: usize },
    #[error("{walk} is not a valid non-backtracking walk")]
    InvalidWalk { walk: Walk },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("a walk needs at least one vertex")]
    Empty,
    #[error("cannot join {left} to {right}: endpoints differ")]
    EndpointMismatch { left: Walk, right: Walk },
    #[error("joining {left} to {right} backtracks at vertex {at}")]
    JunctionBacktrack {
        left: Walk,
        right: Walk,
        at: VertexId,
    },
}

/// Simple undirected graph. Edge ids follow insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate pairs and out-of-range
    /// endpoints. Each edge is stored with its smaller endpoint first.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut graph = Graph {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
            index: HashMap::new(),
        };
        for (a, b) in edges {
            graph.push_edge(a, b)?;
        }
        for list in &mut graph.adjacency {
            list.sort_unstable();
        }
        Ok(graph)
    }

    fn push_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId, GraphError> {
        for v in [a, b] {
            if v >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let key = (a.min(b), a.max(b));
        if self.index.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.index.insert(key, id);
        self.adjacency[a].push((b, id));
        self.adjacency[b].push((a, id));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of an edge, smaller vertex first.
    pub fn edge(&self, id: EdgeId) -> (VertexId, VertexId) {
        self.edges[id]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor index.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).min()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// True iff every consecutive pair is an edge and no vertex repeats at
    /// distance two.
    pub fn is_valid_nb_walk(&self, walk: &Walk) -> bool {
        let vs = walk.vertices();
        if vs.iter().any(|&v| v >= self.vertex_count) {
            return false;
        }
        vs.windows(2)
            .all(|p| self.edge_between(p[0], p[1]).is_some())
            && vs.windows(3).all(|t| t[0] != t[2])
    }

    /// Edge ids traversed by `walk`, in order. Fails unless the walk is a
    /// valid non-backtracking walk.
    pub fn walk_edges(&self, walk: &Walk) -> Result<Vec<EdgeId>, GraphError> {
        if !self.is_valid_nb_walk(walk) {
            return Err(GraphError::InvalidWalk { walk: walk.clone() });
        }
        Ok(walk
            .vertices()
            .windows(2)
            .map(|p| self.edge_between(p[0], p[1]).expect("checked above"))
            .collect())
    }

    /// How many times `walk` uses each edge, indexed by edge id.
    pub fn edge_multiplicities(&self, walk: &Walk) -> Result<Vec<u32>, GraphError> {
        let mut counts = vec![0u32; self.edge_count()];
        for e in self.walk_edges(walk)? {
            counts[e] += 1;
        }
        Ok(counts)
    }

    /// Connected with minimum degree at least three.
    pub fn is_odometric(&self) -> bool {
        self.odometric_violation().is_none()
    }

    /// The first reason the graph fails to be odometric, if any. Degree
    /// violations are reported before disconnection.
    pub fn odometric_violation(&self) -> Option<Violation> {
        if self.vertex_count == 0 {
            return Some(Violation::NoVertices);
        }
        let low = self.low_degree_vertices();
        if let Some(&(vertex, degree)) = low.first() {
            return Some(Violation::LowDegree { vertex, degree });
        }
        if !self.is_connected() {
            return Some(Violation::Disconnected);
        }
        None
    }

    /// Every vertex of degree below three, with its degree.
    pub fn low_degree_vertices(&self) -> Vec<(VertexId, usize)> {
        (0..self.vertex_count)
            .map(|v| (v, self.degree(v)))
            .filter(|&(_, d)| d < 3)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    LowDegree { vertex: VertexId, degree: usize },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::LowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            Violation::Disconnected => write!(f, "graph is disconnected"),
        }
    }
}

/// A graph together with one exact weight per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<Rational>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<Rational>) -> Result<Self, GraphError> {
        if weights.len() != graph.edge_count() {
            return Err(GraphError::WeightCount {
                expected: graph.edge_count(),
                actual: weights.len(),
            });
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self, e: EdgeId) -> &Rational {
        &self.weights[e]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Sum of edge weights along the walk, with multiplicity.
    pub fn walk_weight(&self, walk: &Walk) -> Result<Rational, GraphError> {
        Ok(self
            .graph
            .walk_edges(walk)?
            .into_iter()
            .fold(Rational::zero(), |acc, e| acc + &self.weights[e]))
    }
}

/// A vertex sequence. A single vertex is the empty walk anchored there.
///
/// Construction only checks non-emptiness; adjacency and the
/// non-backtracking condition depend on the ambient graph and are checked by
/// [`Graph::is_valid_nb_walk`]. Concatenation checks the junction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Vec<VertexId>);

impl Walk {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        Ok(Walk(vertices))
    }

    pub fn empty(at: VertexId) -> Self {
        Walk(vec![at])
    }

    pub fn edge(a: VertexId, b: VertexId) -> Self {
        Walk(vec![a, b])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        self.0[self.0.len() - 1]
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    /// Second vertex, if the walk has an edge.
    pub fn second(&self) -> Option<VertexId> {
        self.0.get(1).copied()
    }

    /// Second-to-last vertex, if the walk has an edge.
    pub fn penultimate(&self) -> Option<VertexId> {
        self.0.len().checked_sub(2).map(|i| self.0[i])
    }

    /// First edge as an unordered pair (smaller vertex first).
    pub fn first_edge(&self) -> Option<(VertexId, VertexId)> {
        self.second().map(|s| ordered(self.first(), s))
    }

    /// Last edge as an unordered pair (smaller vertex first).
    pub fn last_edge(&self) -> Option<(VertexId, VertexId)> {
        self.penultimate().map(|p| ordered(p, self.last()))
    }

    pub fn reverse(&self) -> Walk {
        let mut vs = self.0.clone();
        vs.reverse();
        Walk(vs)
    }

    /// `self ∘ other`. The empty walk is a two-sided identity.
    pub fn concat(&self, other: &Walk) -> Result<Walk, WalkError> {
        if self.last() != other.first() {
            return Err(WalkError::EndpointMismatch {
                left: self.clone(),
                right: other.clone(),
            });
        }
        if let (Some(before), Some(after)) = (self.penultimate(), other.second()) {
            if before == after {
                return Err(WalkError::JunctionBacktrack {
                    left: self.clone(),
                    right: other.clone(),
                    at: self.last(),
                });
            }
        }
        let mut vs = Vec::with_capacity(self.0.len() + other.0.len() - 1);
        vs.extend_from_slice(&self.0);
        vs.extend_from_slice(&other.0[1..]);
        Ok(Walk(vs))
    }

    /// Concatenates several walks left to right.
    pub fn chain<'a, I>(first: &Walk, rest: I) -> Result<Walk, WalkError>
    where
        I: IntoIterator<Item = &'a Walk>,
    {
        rest.into_iter()
            .try_fold(first.clone(), |acc, w| acc.concat(w))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(vs: &[usize]) -> Walk {
        Walk::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn nb_validity_on_k4() {
        let g = fixtures::k4();
        assert!(g.graph().is_valid_nb_walk(&w(&[0, 1, 2, 0])));
        assert!(!g.graph().is_valid_nb_walk(&w(&[0, 1, 0])));
        assert!(!g.graph().is_valid_nb_walk(&w(&[0, 1, 2, 1, 0])));
        assert!(g.graph().is_valid_nb_walk(&w(&[3])));
        assert!(!g.graph().is_valid_nb_walk(&w(&[0, 9])));
    }

    #[test]
    fn closed_walk_may_reuse_its_first_edge_at_the_end() {
        let g = fixtures::k4();
        // first edge {0,1}, last edge {1,0}
        let walk = w(&[0, 1, 2, 3, 1, 0]);
        assert!(walk.is_closed());
        assert!(g.graph().is_valid_nb_walk(&walk));
    }

    #[test]
    fn concat_cases() {
        assert_eq!(
            w(&[0, 1, 2]).concat(&w(&[2, 3, 0])).unwrap(),
            w(&[0, 1, 2, 3, 0])
        );
        assert!(matches!(
            w(&[0, 1, 2]).concat(&w(&[2, 1, 0])),
            Err(WalkError::JunctionBacktrack { at: 2, .. })
        ));
        assert_eq!(w(&[0, 1]).concat(&w(&[1])).unwrap(), w(&[0, 1]));
        assert_eq!(Walk::empty(0).concat(&w(&[0, 1])).unwrap(), w(&[0, 1]));
        assert!(matches!(
            w(&[0, 1]).concat(&w(&[2, 3])),
            Err(WalkError::EndpointMismatch { .. })
        ));
        assert_eq!(Walk::new(vec![]), Err(WalkError::Empty));
    }

    #[test]
    fn reverse_cases() {
        assert_eq!(w(&[0, 1, 2, 3]).reverse(), w(&[3, 2, 1, 0]));
        assert_eq!(w(&[0]).reverse(), w(&[0]));
    }

    #[test]
    fn weights_and_multiplicities() {
        let g = fixtures::k4();
        assert_eq!(
            g.walk_weight(&w(&[0, 1, 2, 0])).unwrap(),
            Rational::from_integer(7.into())
        );
        assert!(g.walk_weight(&w(&[2])).unwrap().is_zero());
        let long = w(&[0, 1, 2, 0, 3, 1, 0]);
        assert_eq!(
            g.walk_weight(&long).unwrap(),
            g.walk_weight(&long.reverse()).unwrap()
        );
        assert!(g.walk_weight(&w(&[0, 1, 0])).is_err());

        let e01 = g.graph().edge_between(0, 1).unwrap();
        let e12 = g.graph().edge_between(1, 2).unwrap();
        let e02 = g.graph().edge_between(0, 2).unwrap();
        let once = g.graph().edge_multiplicities(&w(&[0, 1, 2, 0])).unwrap();
        let twice = g
            .graph()
            .edge_multiplicities(&w(&[0, 1, 2, 0, 1, 2, 0]))
            .unwrap();
        for e in 0..6 {
            let expected = u32::from([e01, e12, e02].contains(&e));
            assert_eq!(once[e], expected);
            assert_eq!(twice[e], 2 * expected);
        }
        assert_eq!(g.graph().edge_multiplicities(&w(&[1])).unwrap(), vec![0; 6]);
    }

    #[test]
    fn odometric_predicate() {
        assert!(fixtures::k4().graph().is_odometric());
        assert!(fixtures::petersen().graph().is_odometric());
        let c5 = fixtures::cycle(5);
        assert!(!c5.graph().is_odometric());
        assert_eq!(
            c5.graph().odometric_violation(),
            Some(Violation::LowDegree {
                vertex: 0,
                degree: 2
            })
        );
        // two disjoint K4s: degrees fine, not connected
        let mut edges = Vec::new();
        for base in [0, 4] {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((base + a, base + b));
                }
            }
        }
        let two = Graph::new(8, edges).unwrap();
        assert_eq!(two.odometric_violation(), Some(Violation::Disconnected));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }
}
