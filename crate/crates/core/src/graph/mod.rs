//! Undirected simple graphs on `0..n` with bitset adjacency rows.

mod cycles;
mod flow;

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cycles::{enumerate_induced_cycles, for_each_induced_cycle, DEFAULT_CYCLE_LIMIT};
pub use flow::{min_vertex_cut, min_vertex_cut_bounded, VertexCut};
pub(crate) use flow::weighted_vertex_cut;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set is not a connected component")]
    NotAComponent,
    #[error("induced cycle enumeration exceeded the limit of {limit}")]
    CycleLimitExceeded { limit: usize },
    #[error("vertex sets intersect or are adjacent, so no vertex cut separates them")]
    Inseparable,
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
    #[error("malformed graph document: {0}")]
    Malformed(String),
}

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        Self(bits.ones().collect())
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            bits.insert(v);
        }
        bits
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

/// Undirected simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

/// Adjacency-list JSON document: `{"n": .., "edges": [[u, v], ..], "labels": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            rows: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    /// Builds from an edge list; repeated edges collapse, self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Builds from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        Self::from_rows(rows)
    }

    fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let adjacency = rows.iter().map(|r| r.ones().collect()).collect();
        Self {
            adjacency,
            rows,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount(labels.len(), self.vertex_count()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn all_vertices(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.vertex_count());
        bits.insert_range(..);
        bits
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        let n = self.vertex_count();
        match set.iter().find(|&v| v >= n) {
            Some(vertex) => Err(GraphError::VertexOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }

    /// `set` together with every neighbor of a member.
    pub fn closed_neighborhood(&self, set: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.vertex_count());
        for v in set {
            bits.insert(v);
            bits.union_with(&self.rows[v]);
        }
        bits
    }

    /// Connected components of the subgraph induced by `mask`, each sorted,
    /// ordered by least vertex.
    pub fn components_within(&self, mask: &FixedBitSet) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in mask.ones() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if mask.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        out
    }

    /// Connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: &FixedBitSet) -> usize {
        mask.ones()
            .map(|v| self.rows[v].intersection(mask).count())
            .sum::<usize>()
            / 2
    }

    /// Whether the subgraph induced by `mask` contains a cycle (is not a forest).
    pub fn has_cycle_within(&self, mask: &FixedBitSet) -> bool {
        let vertices = mask.count_ones(..);
        let comps = self.components_within(mask).len();
        self.edges_within(mask) + comps > vertices
    }

    /// Whether a connected component contains a cycle: it does exactly when
    /// it has at least as many edges as vertices.
    pub fn component_contains_cycle(&self, component: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(component)?;
        let Some(first) = component.first() else {
            return Err(GraphError::NotAComponent);
        };
        let mask = component.to_bits(self.vertex_count());
        let comps = self.components_within(&mask);
        let closed = component
            .iter()
            .all(|v| self.adjacency[v].iter().all(|&w| mask.contains(w)));
        if comps.len() != 1 || !closed || comps[0].first() != Some(first) {
            return Err(GraphError::NotAComponent);
        }
        Ok(self.edges_within(&mask) >= component.len())
    }

    /// The subgraph induced by `vertices`, relabeled to `0..len` in ascending order.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> Result<Self, GraphError> {
        self.check_set(vertices)?;
        let verts = vertices.as_slice();
        let g = Self::from_fn(verts.len(), |i, j| self.has_edge(verts[i], verts[j]));
        match &self.labels {
            Some(labels) => g.with_labels(verts.iter().map(|&v| labels[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Graphviz DOT with vertex labels and edges in ascending order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", dot_quote(name)).unwrap();
        for v in 0..self.vertex_count() {
            writeln!(out, "  {v} [label={}];", dot_quote(&self.label(v))).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            n: self.vertex_count(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: (0..self.vertex_count()).map(|v| self.label(v)).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
        let g = Self::from_edges(doc.n, doc.edges.iter().map(|&[u, v]| (u, v)))?;
        if doc.labels.is_empty() {
            Ok(g)
        } else {
            g.with_labels(doc.labels.clone())
        }
    }
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}
