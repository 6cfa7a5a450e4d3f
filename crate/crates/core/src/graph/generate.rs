//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::schemes::pdelta::PDeltaInstance;

/// A generator request, as accepted by `localcert gen`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    RandomTree {
        n: usize,
        seed: u64,
    },
    RandomBoundedDegree {
        n: usize,
        max_degree: usize,
        seed: u64,
    },
    /// A member of `P_Δ` whose leaf string is `half` repeated twice.
    PDelta {
        delta: usize,
        depth: usize,
        half: BitString,
        id_seed: Option<u64>,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GenSpec::Path { n } if n >= 1 => Ok(path(n)),
            GenSpec::Cycle { n } if n >= 3 => Ok(cycle(n)),
            GenSpec::Star { n } if n >= 1 => Ok(star(n)),
            GenSpec::RandomTree { n, seed } if n >= 1 => Ok(random_tree(n, seed)),
            GenSpec::RandomBoundedDegree { n, max_degree, seed } => random_bounded_degree(n, max_degree, seed),
            GenSpec::PDelta { delta, depth, ref half, id_seed } => {
                Ok(PDeltaInstance::generate(delta, depth, half, id_seed)?.into_graph())
            }
            ref other => Err(Error::Input(format!("infeasible generator request {other:?}"))),
        }
    }
}

/// `1 - 2 - ... - n`. Panics for `n == 0`.
pub fn path(n: usize) -> Graph {
    Graph::unlabeled(n, (1..n).map(|i| (i, i + 1))).expect("path needs n >= 1")
}

/// `1 - 2 - ... - n - 1`. Panics for `n < 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs n >= 3");
    Graph::unlabeled(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)])).unwrap()
}

/// Center `1` joined to leaves `2..=n`. Panics for `n == 0`.
pub fn star(n: usize) -> Graph {
    Graph::unlabeled(n, (2..=n).map(|i| (1, i))).expect("star needs n >= 1")
}

/// Random recursive tree: each vertex in a random order attaches to a
/// uniformly chosen earlier one.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (1..=n).collect();
    order.shuffle(&mut rng);
    let edges: Vec<_> = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect();
    Graph::unlabeled(n, edges).expect("random tree needs n >= 1")
}

/// Connected random graph with maximum degree at most `max_degree`: a random
/// degree-capped spanning tree plus a few extra edges that respect the cap.
pub fn random_bounded_degree(n: usize, max_degree: usize, seed: u64) -> Result<Graph> {
    if n == 0 || (n == 2 && max_degree < 1) || (n > 2 && max_degree < 2) {
        return Err(Error::Input(format!("no connected graph on {n} vertices has maximum degree {max_degree}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![0usize; n + 1];
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let open: Vec<VertexId> = order[..i].iter().copied().filter(|&u| degree[u] < max_degree).collect();
        let parent = open[rng.gen_range(0..open.len())];
        let child = order[i];
        degree[parent] += 1;
        degree[child] += 1;
        edges.insert((parent.min(child), parent.max(child)));
    }
    let extra = rng.gen_range(0..=n / 2);
    for _ in 0..extra * 4 {
        if edges.len() >= n - 1 + extra {
            break;
        }
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        let e = (u.min(v), u.max(v));
        if u == v || edges.contains(&e) || degree[u] >= max_degree || degree[v] >= max_degree {
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
        edges.insert(e);
    }
    Graph::unlabeled(n, edges)
}

/// Same graph with every label replaced by a random string of length
/// `0..=max_bits`.
pub fn random_labels(g: &Graph, max_bits: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<_> = g
        .vertices()
        .map(|v| {
            let len = rng.gen_range(0..=max_bits);
            (v, (0..len).map(|_| rng.gen_bool(0.5)).collect::<BitString>())
        })
        .collect();
    g.clone().with_labels(labels).expect("labels only name existing vertices")
}
