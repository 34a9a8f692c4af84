//! Finite simple graphs over dense vertex indices `0..n`.

mod amalgam;
mod generators;
pub mod io;
mod iso;

pub use amalgam::{free_amalgam, Amalgam, Glue};
pub use generators::{
    complete_graph, complete_multipartite, cycle, disjoint_clique_union, edgeless, half_graph,
    paley_graph, path, random_graph, shift_graph, shift_tuples,
};
pub use iso::{
    automorphism_extending, find_embedding, find_isomorphism, find_isomorphism_extending,
    for_each_embedding,
};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Finite simple graph: symmetric, irreflexive adjacency stored as one
/// bitset row per vertex, plus optional opaque per-vertex labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            rows: (0..n).map(|_| VertexSet::new(n)).collect(),
            labels: None,
        }
    }

    /// Builds a graph from an edge list; loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::structural(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::structural(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::structural(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds the edge `uv`. Panics on a loop or out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at vertex {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.rows[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::structural(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.rows[v].intersection_len(s)).sum::<usize>() / 2
    }

    /// Induced subgraph on `s`, vertices renumbered in increasing order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        if s.universe() > self.n() && s.iter().any(|v| v >= self.n()) {
            return Err(Error::structural(format!(
                "vertex set {:?} exceeds graph of order {}",
                s,
                self.n()
            )));
        }
        let members: Vec<usize> = s.iter().collect();
        self.induced_by_list(&members)
    }

    /// Induced subgraph on the listed vertices, vertex `i` of the result
    /// being `list[i]`.
    pub fn induced_by_list(&self, list: &[usize]) -> Result<Graph> {
        let mut seen = VertexSet::new(self.n());
        for &v in list {
            if v >= self.n() {
                return Err(Error::structural(format!(
                    "vertex {v} out of range for {} vertices",
                    self.n()
                )));
            }
            if seen.contains(v) {
                return Err(Error::structural(format!("vertex {v} listed twice")));
            }
            seen.insert(v);
        }
        let mut h = Graph::new(list.len());
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                if self.has_edge(list[i], list[j]) {
                    h.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            h.labels = Some(list.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(h)
    }

    /// Vertex-disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(n + u, n + v);
        }
        g
    }

    /// Appends `k` isolated vertices.
    pub fn with_extra_vertices(&self, k: usize) -> Graph {
        self.disjoint_union(&Graph::new(k))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(u, v)| !self.rows[u].intersects(&self.rows[v]))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut others = s.clone();
            others.remove(v);
            others.is_subset(&self.rows[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.rows[v].intersects(s))
    }

    /// Checks the adjacency invariants: symmetric, irreflexive, in range.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for u in 0..n {
            if self.rows[u].universe() != n {
                return Err(Error::structural(format!("row {u} has wrong universe")));
            }
            if self.rows[u].contains(u) {
                return Err(Error::structural(format!("loop at vertex {u}")));
            }
            for v in self.rows[u].iter() {
                if !self.rows[v].contains(u) {
                    return Err(Error::structural(format!("asymmetric pair ({u},{v})")));
                }
            }
        }
        Ok(())
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.rows[u].iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Injective vertex map from a source graph into a target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn identity(n: usize) -> Self {
        Embedding { map: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, target_order: usize) -> VertexSet {
        VertexSet::from_members(target_order, self.map.iter().copied())
    }

    /// True iff the map is injective, in range, and preserves both edges
    /// and non-edges (an induced-subgraph embedding).
    pub fn is_induced(&self, source: &Graph, target: &Graph) -> bool {
        if self.map.len() != source.n() {
            return false;
        }
        let mut seen = VertexSet::new(target.n());
        for &v in &self.map {
            if v >= target.n() || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        (0..source.n()).all(|i| {
            ((i + 1)..source.n())
                .all(|j| source.has_edge(i, j) == target.has_edge(self.map[i], self.map[j]))
        })
    }

    pub fn is_isomorphism(&self, source: &Graph, target: &Graph) -> bool {
        source.n() == target.n() && self.is_induced(source, target)
    }
}
