//! Labels spelled as pendant gadgets, and the two scheme wrappers that move
//! certification between a labeled property and its unlabeled image.
//!
//! `g(G)` hangs off every vertex `v` one marker leaf and a path
//! `p(v)_1 ... p(v)_{|L(v)|+1}`. Path vertex `i` carries 2 leaves for a 0
//! bit, 3 for a 1 bit, and the last one carries 4. Original identifiers are
//! kept; gadget vertices are numbered from `n + 1` host by host, each block
//! in the order marker, `p_1`, its leaves, `p_2`, its leaves, and so on.

mod labeled;
mod unlabeled;

use std::collections::{BTreeMap, BTreeSet};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub use labeled::{labeled_size_bound, wrap_labeled, LabeledCert, WrappedLabeled};
pub use unlabeled::{unlabeled_size_bound, wrap_unlabeled, WrappedCert, WrappedUnlabeled};

/// The gadget of one host with concrete identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub host: VertexId,
    pub marker: VertexId,
    /// `p(v)_1 ..= p(v)_{|L|+1}`.
    pub path: Vec<VertexId>,
    /// Leaves of each path vertex.
    pub leaves: Vec<Vec<VertexId>>,
}

impl Gadget {
    /// The gadget for `label` with identifiers `first, first + 1, ...` in
    /// block order.
    pub fn layout(host: VertexId, label: &BitString, first: VertexId) -> Gadget {
        let mut next = first;
        let mut take = || {
            next += 1;
            next - 1
        };
        let marker = take();
        let mut path = Vec::with_capacity(label.len() + 1);
        let mut leaves = Vec::with_capacity(label.len() + 1);
        for i in 0..=label.len() {
            path.push(take());
            let count = leaf_count(label.get(i));
            leaves.push((0..count).map(|_| take()).collect());
        }
        Gadget { host, marker, path, leaves }
    }

    /// Gadget vertices in block order (the host excluded).
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.marker];
        for (p, ls) in self.path.iter().zip(&self.leaves) {
            out.push(*p);
            out.extend(ls);
        }
        out
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = vec![(self.host, self.marker), (self.host, self.path[0])];
        out.extend(self.path.windows(2).map(|w| (w[0], w[1])));
        for (p, ls) in self.path.iter().zip(&self.leaves) {
            out.extend(ls.iter().map(|&l| (*p, l)));
        }
        out
    }
}

/// Leaves on a path vertex: 2 for a 0 bit, 3 for a 1 bit, 4 past the end.
fn leaf_count(bit: Option<bool>) -> usize {
    match bit {
        Some(false) => 2,
        Some(true) => 3,
        None => 4,
    }
}

/// Gadget vertices for one label, the host excluded:
/// `6 + |L| + 2·zeros + 3·ones`.
pub fn gadget_size(label: &BitString) -> usize {
    let ones = label.iter().filter(|&b| b).count();
    6 + label.len() + 2 * (label.len() - ones) + 3 * ones
}

/// Exact `|V(g(G))|`.
pub fn encoded_vertex_count(g: &Graph) -> usize {
    g.vertex_count() + g.labels().map(|(_, l)| gadget_size(l)).sum::<usize>()
}

/// The size claim `5 |V(G)| (ℓ_max + 1)`.
pub fn size_claim(g: &Graph) -> usize {
    5 * g.vertex_count() * (g.max_label_bits() + 1)
}

/// The gadgets `encode_graph` builds, by host.
pub fn gadgets(g: &Graph) -> BTreeMap<VertexId, Gadget> {
    let mut next = g.max_id() + 1;
    g.labels()
        .map(|(v, l)| {
            let gadget = Gadget::layout(v, l, next);
            next += gadget_size(l);
            (v, gadget)
        })
        .collect()
}

/// `g(G)`.
pub fn encode_graph(g: &Graph) -> Graph {
    let gadgets = gadgets(g);
    let vertices = g.vertices().chain(gadgets.values().flat_map(Gadget::vertices)).map(|v| (v, BitString::new()));
    let edges = g.edges().chain(gadgets.values().flat_map(Gadget::edges));
    Graph::from_parts(vertices, edges).expect("gadget identifiers are fresh")
}

fn decode_error(vertex: VertexId, reason: impl Into<String>) -> Error {
    Error::Decode { vertex, reason: reason.into() }
}

/// `g'(H)`: the labeled graph whose encoding is `H`, with the same
/// identifiers on the original vertices. Fails, naming a vertex, unless `H`
/// has the exact gadget structure.
pub fn decode_graph(h: &Graph) -> Result<Graph> {
    let is_leaf = |v: VertexId| h.degree(v) == 1;
    let leaf_neighbors = |v: VertexId| h.neighbors(v).iter().filter(|&&u| is_leaf(u)).count();
    let inner = |v: VertexId| h.neighbors(v).iter().copied().filter(|&u| !is_leaf(u)).collect::<Vec<_>>();

    let mut hosts = BTreeSet::new();
    let mut on_paths = BTreeSet::new();
    for v in h.vertices() {
        if is_leaf(v) {
            let u = *h.neighbors(v).iter().next().expect("degree 1");
            if is_leaf(u) {
                return Err(decode_error(v, "a leaf hangs off another leaf"));
            }
            continue;
        }
        match leaf_neighbors(v) {
            1 => hosts.insert(v),
            2..=4 => on_paths.insert(v),
            k => return Err(decode_error(v, format!("{k} leaf neighbors match no gadget rule"))),
        };
    }

    let mut labels = Vec::new();
    let mut claimed = BTreeSet::new();
    for &v in &hosts {
        let starts: Vec<VertexId> = inner(v).into_iter().filter(|u| on_paths.contains(u)).collect();
        let [mut cur] = starts[..] else {
            return Err(decode_error(v, format!("{} gadget paths attached, expected 1", starts.len())));
        };
        let mut prev = v;
        let mut label = BitString::new();
        loop {
            if !claimed.insert(cur) {
                return Err(decode_error(cur, "path vertex shared by two gadgets"));
            }
            let onward: Vec<VertexId> = inner(cur).into_iter().filter(|&u| u != prev).collect();
            match leaf_neighbors(cur) {
                4 => {
                    if !onward.is_empty() {
                        return Err(decode_error(cur, "terminator continues"));
                    }
                    break;
                }
                k => {
                    let [next] = onward[..] else {
                        return Err(decode_error(cur, "gadget path does not continue to a terminator"));
                    };
                    if !on_paths.contains(&next) {
                        return Err(decode_error(cur, "gadget path runs into an original vertex"));
                    }
                    label.push(k == 3);
                    prev = cur;
                    cur = next;
                }
            }
        }
        labels.push((v, label));
    }
    if let Some(&v) = on_paths.difference(&claimed).next() {
        return Err(decode_error(v, "path vertex belongs to no gadget"));
    }
    let edges = h.edges().filter(|(a, b)| hosts.contains(a) && hosts.contains(b));
    Graph::from_parts(labels, edges)
}
