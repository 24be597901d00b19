//! Immutable simple undirected graphs over labelled vertices.
//!
//! Vertices are addressed by dense indices assigned in order of first
//! appearance. Labels are kept for reporting; every set rendered for a user
//! goes through [`Graph::sorted_labels`].

mod chordal;
mod vertex_set;

use std::collections::{HashMap, HashSet, VecDeque};

pub use chordal::{is_chordal, maximum_cardinality_search, perfect_elimination_ordering};
pub use vertex_set::{Iter, VertexSet};

use crate::error::{Error, Result};

/// Vertex index within a [`Graph`].
pub type Vertex = usize;

#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacency: Vec<Vec<Vertex>>,
    m: usize,
    /// Index of each vertex in the graph this one was induced from.
    origin: Option<Vec<Vertex>>,
}

/// Components of an induced subgraph, ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<VertexSet>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.components.iter()
    }

    /// The component holding `v`, if any.
    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }
}

/// Incremental construction of a [`Graph`].
///
/// Strict mode (the default) rejects self-loops and repeated edges; with
/// [`GraphBuilder::dedupe`] both are dropped silently.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacency: Vec<Vec<Vertex>>,
    edges: HashSet<(Vertex, Vertex)>,
    dedupe: bool,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dedupe(mut self, dedupe: bool) -> Self {
        self.dedupe = dedupe;
        self
    }

    /// Registers `label`, returning its index. Existing labels are reused.
    pub fn add_vertex(&mut self, label: &str) -> Vertex {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), v);
        self.adjacency.push(Vec::new());
        v
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            if self.dedupe {
                self.add_vertex(a);
                return Ok(());
            }
            return Err(Error::SelfLoop(a.to_owned()));
        }
        let u = self.add_vertex(a);
        let v = self.add_vertex(b);
        self.add_index_edge(u, v)
    }

    /// Adds an edge between already-registered vertices.
    pub fn add_index_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        assert!(u < self.labels.len() && v < self.labels.len());
        if u == v {
            if self.dedupe {
                return Ok(());
            }
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            if self.dedupe {
                return Ok(());
            }
            return Err(Error::DuplicateEdge(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ));
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        Ok(())
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adjacency {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adjacency: self.adjacency,
            m: self.edges.len(),
            origin: None,
        }
    }
}

/// Builds a graph from label pairs in strict mode.
pub fn build_graph<I, S>(edges: I) -> Result<Graph>
where
    I: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
{
    let mut builder = GraphBuilder::new();
    for (a, b) in edges {
        builder.add_edge(a.as_ref(), b.as_ref())?;
    }
    Ok(builder.build())
}

impl Graph {
    /// Graph on vertices labelled `0..n` with the given index edges.
    pub fn from_index_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for v in 0..n {
            builder.add_vertex(&v.to_string());
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            builder.add_index_edge(u, v)?;
        }
        Ok(builder.build())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    /// Resolves a label, failing with `UnknownVertex`.
    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    /// Sorted neighbour indices of `v`.
    #[inline]
    pub fn adjacency(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// For induced subgraphs, the index of `v` in the graph it was taken from.
    pub fn origin(&self, v: Vertex) -> Vertex {
        self.origin.as_ref().map_or(v, |o| o[v])
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() == self.n() {
            Ok(())
        } else if let Some(v) = set.iter().find(|&v| v >= self.n()) {
            Err(Error::UnknownVertex(format!("#{v}")))
        } else {
            Err(Error::UnknownVertex(format!(
                "set built for {} vertices used on a graph with {}",
                set.universe(),
                self.n()
            )))
        }
    }

    /// Resolves labels into a set; fails on the first unknown label.
    pub fn set_of<I, S>(&self, labels: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = self.empty_set();
        for label in labels {
            set.insert(self.vertex(label.as_ref())?);
        }
        Ok(set)
    }

    /// Labels of `set`, sorted lexicographically.
    pub fn sorted_labels(&self, set: &VertexSet) -> Vec<String> {
        let mut out: Vec<String> = set.iter().map(|v| self.labels[v].clone()).collect();
        out.sort_unstable();
        out
    }

    pub fn neighbors(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut set = self.empty_set();
        for &u in &self.adjacency[v] {
            set.insert(u);
        }
        Ok(set)
    }

    /// Boundary of `set`: every vertex outside it adjacent to a member.
    pub fn neighbors_of_set(&self, set: &VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut out = self.empty_set();
        for v in set {
            for &u in &self.adjacency[v] {
                if !set.contains(u) {
                    out.insert(u);
                }
            }
        }
        Ok(out)
    }

    /// Subgraph induced by `set`. Vertex `i` of the result is the `i`-th
    /// smallest member of `set`; labels carry over.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        self.check_set(set)?;
        let members = set.to_vec();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut m = 0;
        let adjacency: Vec<Vec<Vertex>> = members
            .iter()
            .map(|&v| {
                let list: Vec<Vertex> = self.adjacency[v]
                    .iter()
                    .filter(|&&u| set.contains(u))
                    .map(|&u| local[u])
                    .collect();
                m += list.len();
                list
            })
            .collect();
        let labels: Vec<String> = members.iter().map(|&v| self.labels[v].clone()).collect();
        let index = labels.iter().cloned().zip(0..).collect();
        Ok(Graph {
            labels,
            index,
            adjacency,
            m: m / 2,
            origin: Some(members.iter().map(|&v| self.origin(v)).collect()),
        })
    }

    /// Connected components of the subgraph induced by `restrict`.
    pub fn connected_components(&self, restrict: &VertexSet) -> Result<ComponentDecomposition> {
        self.check_set(restrict)?;
        let mut seen = self.empty_set();
        let mut queue = VecDeque::new();
        let mut components = Vec::new();
        for start in restrict {
            if seen.contains(start) {
                continue;
            }
            let mut component = self.empty_set();
            seen.insert(start);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                component.insert(v);
                for &u in &self.adjacency[v] {
                    if restrict.contains(u) && seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
            components.push(component);
        }
        Ok(ComponentDecomposition { components })
    }

    /// Whether every pair of distinct members of `set` is adjacent.
    pub fn is_complete(&self, set: &VertexSet) -> Result<bool> {
        self.check_set(set)?;
        Ok(self.first_missing_edge(set).is_none())
    }

    /// Smallest non-adjacent pair `(u, v)`, `u < v`, inside `set`.
    pub(crate) fn first_missing_edge(&self, set: &VertexSet) -> Option<(Vertex, Vertex)> {
        let need = set.len().saturating_sub(1);
        for u in set {
            let hits = self.adjacency[u].iter().filter(|&&w| set.contains(w)).count();
            if hits < need {
                let v = set
                    .iter()
                    .find(|&v| v > u && !self.has_edge(u, v))
                    .or_else(|| set.iter().find(|&v| v != u && !self.has_edge(u, v)))
                    .expect("a missing neighbour exists");
                return Some((u.min(v), u.max(v)));
            }
        }
        None
    }

    pub fn is_simplicial(&self, v: Vertex) -> Result<bool> {
        let nbrs = self.neighbors(v)?;
        Ok(self.first_missing_edge(&nbrs).is_none())
    }

    /// Labelled edge set with endpoints ordered lexicographically.
    pub fn labelled_edges(&self) -> std::collections::BTreeSet<(String, String)> {
        self.edges()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u].clone(), self.labels[v].clone());
                if a <= b { (a, b) } else { (b, a) }
            })
            .collect()
    }

    /// Same labels and same labelled edges, regardless of index assignment.
    pub fn same_labelled_graph(&self, other: &Graph) -> bool {
        let mine: HashSet<&String> = self.labels.iter().collect();
        let theirs: HashSet<&String> = other.labels.iter().collect();
        mine == theirs && self.labelled_edges() == other.labelled_edges()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const FIG2_EDGES: [(&str, &str); 10] = [
        ("t", "a"),
        ("t", "l"),
        ("t", "e"),
        ("l", "e"),
        ("e", "x"),
        ("e", "d"),
        ("e", "b"),
        ("l", "s"),
        ("b", "s"),
        ("d", "b"),
    ];

    pub fn fig2() -> Graph {
        build_graph(FIG2_EDGES).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_index_edges(n, &edges).unwrap()
    }

    pub fn labelled_path(labels: &[&str]) -> Graph {
        build_graph(labels.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_index_edges(n, &edges).unwrap()
    }

    pub fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        g.set_of(labels.iter().copied()).unwrap()
    }

    pub fn labels(g: &Graph, s: &VertexSet) -> Vec<String> {
        g.sorted_labels(s)
    }

    /// Graph with `n` vertices and edges chosen by the bits of `mask`
    /// over the pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::from_index_edges(n, &edges).unwrap()
    }
}
