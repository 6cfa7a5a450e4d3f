//! Labeled, identifier-carrying, undirected simple graphs.
//!
//! A [`Graph`] stores its vertices by identifier. Host graphs (the inputs a
//! scheme certifies) are built with [`Graph::new`], which enforces the host
//! invariants: identifiers are exactly `1..=n`, there are no self-loops or
//! parallel edges, and the graph is connected. Subgraphs cut out for local
//! views and graphs reassembled from certificates keep their original
//! identifiers and are built with [`Graph::from_parts`], which only requires
//! simplicity.

mod format;
mod generate;
mod view;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

pub use format::{
    certs_from_json, certs_from_text, certs_to_json, certs_to_text, graph_from_json, graph_from_text, graph_to_json,
    graph_to_text, parse_certs, parse_graph, CertsDoc, GraphDoc, LabelDoc,
};
pub use generate::{cycle, path, random_bounded_degree, random_labels, random_tree, star, GenSpec};
pub use view::{induced_view, LocalView};

pub type VertexId = usize;

static NO_NEIGHBORS: BTreeSet<VertexId> = BTreeSet::new();

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Node {
    label: BitString,
    neighbors: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    nodes: BTreeMap<VertexId, Node>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub n: usize,
}

impl Graph {
    /// Builds a host graph on identifiers `1..=n`. Vertices missing from
    /// `labels` get the empty label.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        labels: impl IntoIterator<Item = (VertexId, BitString)>,
    ) -> Result<Self> {
        let g = Self::from_parts((1..=n).map(|v| (v, BitString::new())), edges)?;
        let g = g.with_labels(labels)?;
        g.check_host()?;
        Ok(g)
    }

    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Self::new(n, edges, std::iter::empty())
    }

    /// Builds a simple graph on an arbitrary identifier set. Connectivity is
    /// not required.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = (VertexId, BitString)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut nodes = BTreeMap::new();
        for (v, label) in vertices {
            if nodes.insert(v, Node { label, neighbors: BTreeSet::new() }).is_some() {
                return Err(Error::Graph(format!("duplicate vertex {v}")));
            }
        }
        let mut g = Graph { nodes };
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        for x in [u, v] {
            if !self.nodes.contains_key(&x) {
                return Err(Error::Graph(format!("edge {{{u}, {v}}} mentions unknown vertex {x}")));
            }
        }
        if !self.nodes.get_mut(&u).unwrap().neighbors.insert(v) {
            return Err(Error::Graph(format!("parallel edge {{{u}, {v}}}")));
        }
        self.nodes.get_mut(&v).unwrap().neighbors.insert(u);
        Ok(())
    }

    /// Checks the host invariants: identifiers `1..=n`, at least one vertex,
    /// connected.
    pub fn check_host(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Graph("graph has no vertices".into()));
        }
        let n = self.nodes.len();
        if self.nodes.keys().copied().ne(1..=n) {
            return Err(Error::Graph(format!("identifiers are not exactly 1..={n}")));
        }
        if !self.is_connected() {
            return Err(Error::Graph("graph is disconnected".into()));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.nodes.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.nodes.contains_key(&v)
    }

    /// Largest identifier present (0 for the empty graph).
    pub fn max_id(&self) -> VertexId {
        self.nodes.keys().next_back().copied().unwrap_or(0)
    }

    /// Neighbors of `v`; empty for vertices not in the graph.
    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        self.nodes.get(&v).map_or(&NO_NEIGHBORS, |n| &n.neighbors)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).contains(&v)
    }

    pub fn label(&self, v: VertexId) -> Option<&BitString> {
        self.nodes.get(&v).map(|n| &n.label)
    }

    pub fn labels(&self) -> impl Iterator<Item = (VertexId, &BitString)> + '_ {
        self.nodes.iter().map(|(&v, n)| (v, &n.label))
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.nodes.iter().flat_map(|(&u, n)| n.neighbors.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.values().map(|n| n.neighbors.len()).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.nodes.values().map(|n| n.neighbors.len()).max().unwrap_or(0)
    }

    pub fn max_label_bits(&self) -> usize {
        self.nodes.values().map(|n| n.label.len()).max().unwrap_or(0)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        DegreeStats { max_degree: self.max_degree(), n: self.vertex_count() }
    }

    pub fn is_connected(&self) -> bool {
        match self.nodes.keys().next() {
            None => true,
            Some(&s) => self.bfs(s).len() == self.nodes.len(),
        }
    }

    /// BFS distances from `source` to every reachable vertex.
    pub fn bfs(&self, source: VertexId) -> BTreeMap<VertexId, usize> {
        self.bfs_within(source, usize::MAX)
    }

    /// BFS distances from `source`, stopping at distance `radius`.
    pub fn bfs_within(&self, source: VertexId, radius: usize) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::new();
        if !self.contains(source) {
            return dist;
        }
        dist.insert(source, 0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            if du == radius {
                continue;
            }
            for &w in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<usize> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        self.bfs(u).get(&v).copied().ok_or_else(|| Error::Graph(format!("{v} is unreachable from {u}")))
    }

    /// `V[v, r]`: every vertex within distance `r` of `v`.
    pub fn ball(&self, v: VertexId, r: usize) -> Result<BTreeSet<VertexId>> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.bfs_within(v, r).into_keys().collect())
    }

    /// Induced subgraph on `keep` (identifiers and labels preserved). Unknown
    /// identifiers in `keep` are ignored.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let nodes = keep
            .iter()
            .filter_map(|v| {
                self.nodes.get(v).map(|node| {
                    let neighbors = node.neighbors.intersection(keep).copied().collect();
                    (*v, Node { label: node.label.clone(), neighbors })
                })
            })
            .collect();
        Graph { nodes }
    }

    /// Copy with some labels replaced.
    pub fn with_labels(mut self, labels: impl IntoIterator<Item = (VertexId, BitString)>) -> Result<Self> {
        for (v, label) in labels {
            self.nodes.get_mut(&v).ok_or(Error::UnknownVertex(v))?.label = label;
        }
        Ok(self)
    }

    /// Copy with every label cleared.
    pub fn strip_labels(&self) -> Graph {
        let mut g = self.clone();
        for node in g.nodes.values_mut() {
            node.label = BitString::new();
        }
        g
    }

    /// Renames every identifier through `map`, which must be injective on
    /// this graph's vertex set.
    pub fn relabel_ids(&self, map: impl Fn(VertexId) -> VertexId) -> Result<Graph> {
        Graph::from_parts(
            self.nodes.iter().map(|(&v, n)| (map(v), n.label.clone())),
            self.edges().map(|(u, v)| (map(u), map(v))),
        )
    }
}
