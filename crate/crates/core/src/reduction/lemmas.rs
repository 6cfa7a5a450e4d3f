//! Lemmas 1 to 5 and Observation 1 as executable checks.
//!
//! Each check states what must hold of an assignment the reduced verifier
//! accepts everywhere. They are global: they look at the whole graph and
//! every certificate, which no verifier can do.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Packet, PacketSet, ReducedScheme};
use crate::bits::BitString;
use crate::certify::{Certificates, Scheme};
use crate::error::Result;
use crate::graph::{induced_view, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    /// Packet distances are graph distances.
    Distances,
    /// `has(P, u, x)` iff `u ∈ V[x, δ]`.
    Coverage,
    /// All packets with one origin carry the same `D`, `L`, `C`.
    Agreement,
    /// Every packet is well-formed.
    WellFormed,
    /// `V[u, r] ⊆ Orig(B[P, u, r - δ])`.
    Visibility,
    /// The rebuilt view equals the true radius-`r` view.
    Reconstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub vertex: VertexId,
    pub detail: String,
}

fn violation(lemma: Lemma, vertex: VertexId, detail: String) -> LemmaViolation {
    LemmaViolation { lemma, vertex, detail }
}

/// Runs the five lemma checks on an assignment. On an assignment accepted
/// at every vertex the result must be empty.
pub fn check_lemmas<S: Scheme>(red: &ReducedScheme<S>, g: &Graph, certs: &Certificates) -> Vec<LemmaViolation> {
    let delta = red.delta();
    let r = red.base_radius();
    let sigma: BTreeMap<VertexId, PacketSet> =
        g.vertices().map(|u| (u, certs.get(u).map(|c| red.codec().decode(c)).unwrap_or_default())).collect();
    let mut out = Vec::new();

    for (&u, packets) in &sigma {
        let dist = g.bfs(u);
        for p in packets {
            match dist.get(&p.origin) {
                Some(&d) if d == p.dist => {}
                Some(&d) => out.push(violation(
                    Lemma::Distances,
                    u,
                    format!("packet from {} claims distance {}, true distance {d}", p.origin, p.dist),
                )),
                None => out.push(violation(Lemma::Distances, u, format!("packet from unknown origin {}", p.origin))),
            }
        }
    }

    for (&u, packets) in &sigma {
        let held: BTreeSet<VertexId> = packets.iter().map(|p| p.origin).collect();
        let ball: BTreeSet<VertexId> = g.bfs_within(u, delta).into_keys().collect();
        if held != ball {
            out.push(violation(Lemma::Coverage, u, format!("holds origins {held:?}, ball is {ball:?}")));
        }
    }

    let mut first: BTreeMap<VertexId, (VertexId, &Packet)> = BTreeMap::new();
    for (&u, packets) in &sigma {
        for p in packets {
            match first.get(&p.origin) {
                None => {
                    first.insert(p.origin, (u, p));
                }
                Some((w, q)) => {
                    if (&q.neighbors, &q.label, &q.cert) != (&p.neighbors, &p.label, &p.cert) {
                        out.push(violation(
                            Lemma::Agreement,
                            u,
                            format!("packet from {} differs from the copy held by {w}", p.origin),
                        ));
                    }
                }
            }
        }
    }

    for (&u, packets) in &sigma {
        for p in packets {
            let ok =
                g.contains(p.origin) && g.neighbors(p.origin) == &p.neighbors && g.label(p.origin) == Some(&p.label);
            if !ok {
                out.push(violation(Lemma::WellFormed, u, format!("packet from {} is not well-formed", p.origin)));
            }
        }
    }

    for u in g.vertices() {
        let seen: BTreeSet<VertexId> =
            g.bfs_within(u, r - delta).into_keys().flat_map(|x| sigma[&x].iter().map(|p| p.origin)).collect();
        let missing: Vec<VertexId> = g.bfs_within(u, r).into_keys().filter(|x| !seen.contains(x)).collect();
        if !missing.is_empty() {
            out.push(violation(Lemma::Visibility, u, format!("origins {missing:?} are not visible")));
        }
    }
    out
}

/// Observation 1 on the honest prover: the view rebuilt from the packets
/// visible at radius `r - δ`, cut to radius `r`, equals the true radius-`r`
/// view with base certificates.
pub fn check_reconstruction<S: Scheme>(red: &ReducedScheme<S>, g: &Graph) -> Result<Vec<LemmaViolation>> {
    let certs = red.prove(g)?;
    let base = red.base_certificates(g)?;
    let mut out = Vec::new();
    for v in g.vertices() {
        let view = induced_view(g, &certs, v, red.radius())?;
        let rebuilt = red.reconstruct(&view).and_then(|rv| rv.view_at(v, red.base_radius()));
        let truth = induced_view(g, &base, v, red.base_radius())?;
        if rebuilt.as_ref() != Some(&truth) {
            out.push(violation(Lemma::Reconstruction, v, "rebuilt view differs from G[v, r]".into()));
        }
    }
    Ok(out)
}

/// A single-field change to one vertex's packets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    DistanceUp { vertex: VertexId, origin: VertexId },
    DistanceDown { vertex: VertexId, origin: VertexId },
    Drop { vertex: VertexId, origin: VertexId },
    Duplicate { vertex: VertexId, origin: VertexId },
    AddNeighbor { vertex: VertexId, origin: VertexId, added: VertexId },
    RemoveNeighbor { vertex: VertexId, origin: VertexId, removed: VertexId },
    FlipLabel { vertex: VertexId, origin: VertexId },
    FlipCert { vertex: VertexId, origin: VertexId, bit: usize },
    ExtendCert { vertex: VertexId, origin: VertexId },
    Retarget { vertex: VertexId, origin: VertexId, to: VertexId },
    FlipWireBit { vertex: VertexId, bit: usize },
}

/// Applies one seeded mutation to an assignment. Mutations that would be
/// no-ops on the chosen packet fall back to a raw bit flip of its holder.
pub fn mutate<S: Scheme>(
    red: &ReducedScheme<S>,
    g: &Graph,
    certs: &Certificates,
    seed: u64,
) -> (Certificates, Mutation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<VertexId> = g.vertices().collect();
    let vertex = vertices[rng.gen_range(0..vertices.len())];
    let wire = certs.get(vertex).cloned().unwrap_or_default();
    let mut packets = red.codec().decode(&wire);
    let n = g.max_id();
    let delta = red.delta();

    let raw = |rng: &mut ChaCha8Rng| {
        let bit = rng.gen_range(0..wire.len().max(1));
        let flipped = if wire.is_empty() { BitString::parse("1").unwrap() } else { wire.flipped(bit) };
        (flipped, Mutation::FlipWireBit { vertex, bit })
    };

    let (new_wire, mutation) = if packets.is_empty() {
        raw(&mut rng)
    } else {
        let i = rng.gen_range(0..packets.len());
        let origin = packets[i].origin;
        let p = &mut packets[i];
        let kind = rng.gen_range(0..11);
        let m = match kind {
            0 if p.dist < delta => {
                p.dist += 1;
                Some(Mutation::DistanceUp { vertex, origin })
            }
            1 if p.dist > 0 => {
                p.dist -= 1;
                Some(Mutation::DistanceDown { vertex, origin })
            }
            2 => {
                packets.remove(i);
                Some(Mutation::Drop { vertex, origin })
            }
            3 => {
                let copy = p.clone();
                packets.push(copy);
                Some(Mutation::Duplicate { vertex, origin })
            }
            4 => {
                let added = rng.gen_range(1..=n + 1);
                p.neighbors.insert(added).then_some(Mutation::AddNeighbor { vertex, origin, added })
            }
            5 if !p.neighbors.is_empty() => {
                let all: Vec<VertexId> = p.neighbors.iter().copied().collect();
                let removed = all[rng.gen_range(0..all.len())];
                p.neighbors.remove(&removed);
                Some(Mutation::RemoveNeighbor { vertex, origin, removed })
            }
            6 => {
                p.label = if p.label.is_empty() { BitString::parse("0").unwrap() } else { p.label.flipped(0) };
                Some(Mutation::FlipLabel { vertex, origin })
            }
            7 if !p.cert.is_empty() => {
                let bit = rng.gen_range(0..p.cert.len());
                p.cert = p.cert.flipped(bit);
                Some(Mutation::FlipCert { vertex, origin, bit })
            }
            8 => {
                p.cert.push(rng.gen_bool(0.5));
                Some(Mutation::ExtendCert { vertex, origin })
            }
            9 => {
                let to = rng.gen_range(1..=n);
                (to != origin).then(|| {
                    p.origin = to;
                    Mutation::Retarget { vertex, origin, to }
                })
            }
            _ => None,
        };
        match m {
            Some(m) => (red.codec().encode(&packets), m),
            None => raw(&mut rng),
        }
    };
    let mut out = certs.clone();
    out.insert(vertex, new_wire);
    (out, mutation)
}
