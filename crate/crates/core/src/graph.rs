//! Simple connected undirected graphs with 1-based vertex ids.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::DistanceMatrix;

/// A vertex id in `1..=n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) references a vertex outside 1..={2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 1")]
    Disconnected(Vertex),
    #[error("label for vertex {0} outside 1..={1}")]
    LabelOutOfRange(Vertex, usize),
}

/// An immutable, simple, connected, undirected graph.
///
/// Vertices are the integers `1..=n`. Symbolic labels (such as `a_3`) are an
/// optional parallel lookup and never act as identity.
#[derive(Clone)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<Option<String>>,
    distances: OnceLock<DistanceMatrix>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an unordered edge list.
    ///
    /// The orientation of each pair is irrelevant; `(2, 1)` and `(1, 2)` name
    /// the same edge and listing both is a [`GraphError::DuplicateEdge`].
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            normalized.push((lo, hi));
            adjacency[lo - 1].push(hi);
            adjacency[hi - 1].push(lo);
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        // connectivity from vertex 1
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([1]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u - 1] {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(GraphError::Disconnected(missing + 1));
        }

        Ok(Self {
            name: String::from("graph"),
            adjacency,
            edges: normalized,
            labels: vec![None; n],
            distances: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches symbolic labels. Unlisted vertices keep their current label.
    pub fn with_labels<I, S>(mut self, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, S)>,
        S: Into<String>,
    {
        let n = self.n();
        for (v, label) in labels {
            if v == 0 || v > n {
                return Err(GraphError::LabelOutOfRange(v, n));
            }
            self.labels[v - 1] = Some(label.into());
        }
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adjacency[u - 1]
    }

    /// `N(u)` when `closed` is false, `N[u]` otherwise.
    pub fn neighborhood(&self, u: Vertex, closed: bool) -> VertexSet {
        let mut set: Vec<Vertex> = self.neighbors(u).to_vec();
        if closed {
            set.push(u);
        }
        VertexSet::new(set)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u >= 1 && u <= self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adjacency[u - 1].len()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(v.wrapping_sub(1)).and_then(|l| l.as_deref())
    }

    /// The label of `v`, falling back to its numeric id.
    pub fn display_name(&self, v: Vertex) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    /// Looks a vertex up by label.
    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(label))
            .map(|i| i + 1)
    }

    /// All-pairs distances, computed on first use and cached.
    pub fn distances(&self) -> &DistanceMatrix {
        self.distances.get_or_init(|| DistanceMatrix::from_graph(self))
    }

    /// Two-coloring check by BFS layering.
    pub fn is_bipartite(&self) -> bool {
        let dm = self.distances();
        self.edges
            .iter()
            .all(|&(u, v)| dm.get(1, u) != dm.get(1, v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.labels == other.labels
    }
}

impl Eq for Graph {}

/// A sorted, duplicate-free set of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn insert(&mut self, v: Vertex) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn without(&self, v: Vertex) -> Self {
        Self(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Largest vertex id, used for range checks.
    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        Self::new(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        Self::new(v.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
