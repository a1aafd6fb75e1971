//! Graph and matching data model.
//!
//! A [`Graph`] is built from an ordered edge list and never mutated. Each
//! vertex's adjacency list is ordered by the first appearance of the
//! neighbor in that edge list; the search is deterministic with respect to
//! this order, so it is part of the graph's identity.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Dense 0-based vertex index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        VertexId::new(index)
    }
}

/// Unordered vertex pair, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Returns `None` for a loop.
    pub fn new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(self) -> VertexId {
        self.u
    }

    pub fn v(self) -> VertexId {
        self.v
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn contains(self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint that is not `w`. `w` must be an endpoint.
    pub fn other(self, w: VertexId) -> VertexId {
        debug_assert!(self.contains(w));
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {index} out of range for a graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// Simple undirected graph with ordered adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an ordered edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b) in edges {
            for index in [a, b] {
                if index >= n {
                    return Err(GraphError::VertexOutOfRange { index, n });
                }
            }
            let (va, vb) = (VertexId::new(a), VertexId::new(b));
            let edge = Edge::new(va, vb).ok_or(GraphError::Loop(a))?;
            if !seen.insert(edge) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adjacency[a].push(vb);
            adjacency[b].push(va);
            list.push(edge);
        }
        Ok(Graph {
            adjacency,
            edges: list,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId::new)
    }

    /// Edges in construction order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let (short, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.neighbors(short).contains(&other)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, otherwise its 1-based file index.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v.index()].clone(),
            None => (v.index() + 1).to_string(),
        }
    }

    /// Looks a vertex up by label, falling back to a 1-based file index.
    pub fn vertex_by_label(&self, name: &str) -> Option<VertexId> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(VertexId::new(i));
            }
        }
        name.parse::<usize>()
            .ok()
            .filter(|&i| i >= 1 && i <= self.n())
            .map(|i| VertexId::new(i - 1))
    }

    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("vertex {index} out of range for a graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("edge {0}-{1} is not in the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered by more than one matching edge")]
    SharedVertex(usize),
    #[error("matching was built for {expected} vertices, graph has {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// A set of vertex-disjoint edges, indexed by mate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
    len: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
            len: 0,
        }
    }

    /// Validates `pairs` against `g` and builds the matching.
    pub fn from_pairs<I>(g: &Graph, pairs: I) -> Result<Self, MatchingError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = g.n();
        let mut m = Matching::empty(n);
        for (a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(MatchingError::VertexOutOfRange { index, n });
                }
            }
            let (va, vb) = (VertexId::new(a), VertexId::new(b));
            if a == b || !g.has_edge(va, vb) {
                return Err(MatchingError::NotAnEdge(a, b));
            }
            for w in [va, vb] {
                if m.mate[w.index()].is_some() {
                    return Err(MatchingError::SharedVertex(w.index()));
                }
            }
            m.pair(va, vb);
        }
        Ok(m)
    }

    /// Checks that this matching is valid on `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), MatchingError> {
        if self.mate.len() != g.n() {
            return Err(MatchingError::SizeMismatch {
                expected: self.mate.len(),
                got: g.n(),
            });
        }
        for (i, mate) in self.mate.iter().enumerate() {
            if let Some(w) = *mate {
                if self.mate[w.index()] != Some(VertexId::new(i)) {
                    return Err(MatchingError::SharedVertex(w.index()));
                }
                if !g.has_edge(VertexId::new(i), w) {
                    return Err(MatchingError::NotAnEdge(i, w.index()));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v.index()]
    }

    #[inline]
    pub fn is_free(&self, v: VertexId) -> bool {
        self.mate[v.index()].is_none()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.mate(e.u()) == Some(e.v())
    }

    /// Number of matched edges.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Vertex count of the host graph.
    pub fn order(&self) -> usize {
        self.mate.len()
    }

    /// Matched edges in ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(i, mate)| {
                let w = (*mate)?;
                (i < w.index()).then(|| Edge::new(VertexId::new(i), w).unwrap())
            })
            .collect()
    }

    pub fn free_vertices(&self) -> Vec<VertexId> {
        (0..self.mate.len())
            .map(VertexId::new)
            .filter(|&v| self.is_free(v))
            .collect()
    }

    pub(crate) fn pair(&mut self, a: VertexId, b: VertexId) {
        self.mate[a.index()] = Some(b);
        self.mate[b.index()] = Some(a);
        self.len += 1;
    }

    pub(crate) fn unpair(&mut self, a: VertexId) {
        if let Some(b) = self.mate[a.index()].take() {
            self.mate[b.index()] = None;
            self.len -= 1;
        }
    }
}
