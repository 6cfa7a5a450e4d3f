//! Radius reduction by packet broadcast.
//!
//! Every vertex `u` holds one [`Packet`] per vertex `x` within distance `δ`:
//! the neighborhood, label and base certificate of `x` together with the
//! distance from `x` to `u`. A verifier that sees radius `r - δ` then sees
//! packets from every vertex within radius `r`, rebuilds the radius-`r` view
//! from them and runs the base verifier on it.

mod lemmas;
mod packet;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::bits::{gamma_len, idbits, BitString};
use crate::certify::{soundness_search_in, Certificates, Scheme, SearchConfig, SoundnessOutcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

pub use lemmas::{check_lemmas, check_reconstruction, mutate, Lemma, LemmaViolation, Mutation};
pub use packet::{Packet, PacketCodec, PacketSet};

/// Upper bound on `|V[v, δ]|` in a graph of maximum degree `Δ`.
pub fn packet_count_bound(max_degree: usize, delta: usize) -> usize {
    match max_degree {
        0 => 1,
        1 => 1 + usize::from(delta > 0),
        2 => 2 * delta + 1,
        d => {
            let grown = (d as u128 - 1).saturating_pow(delta as u32);
            let total = (d as u128).saturating_mul(grown).saturating_sub(2) / (d as u128 - 2);
            usize::try_from(total).unwrap_or(usize::MAX)
        }
    }
}

/// Bits of one packet when ids fit in `idbits(n)` bits, `|D| ≤ Δ`,
/// `|L| ≤ ℓ` and `|C| ≤ s`.
pub fn per_packet_bits(max_degree: usize, delta: usize, n: usize, s: usize, l: usize) -> usize {
    let w = idbits(n);
    w + idbits(delta) + gamma_len(max_degree) + max_degree * w + gamma_len(l) + l + gamma_len(s) + s
}

/// The bound the reduced prover's certificates obey:
/// `gamma(count) + gamma(w) + packet_count_bound · per_packet_bits`.
pub fn size_bound(max_degree: usize, delta: usize, n: usize, s: usize, l: usize) -> usize {
    let count = packet_count_bound(max_degree, delta);
    gamma_len(count) + gamma_len(idbits(n)) + count.saturating_mul(per_packet_bits(max_degree, delta, n, s, l))
}

/// An `r`-local scheme turned into an `(r - δ)`-local one.
pub struct ReducedScheme<S> {
    base: S,
    delta: usize,
    codec: PacketCodec,
}

/// `reduce(base, δ)`; requires `0 < δ < r`.
pub fn reduce<S: Scheme>(base: S, delta: usize) -> Result<ReducedScheme<S>> {
    let r = base.radius();
    if delta == 0 || delta >= r {
        return Err(Error::Input(format!("radius reduction needs 0 < delta < r, got delta = {delta}, r = {r}")));
    }
    Ok(ReducedScheme { base, delta, codec: PacketCodec::new(delta) })
}

/// `G(B)` and `C(B)` for a set of packets: the graph on origins and the
/// certificates carried in the packets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructedView {
    pub graph: Graph,
    pub certs: Certificates,
}

impl ReconstructedView {
    /// Fails when two packets with the same origin disagree on `D`, `L` or
    /// `C`, or when an origin lists another origin that does not list it back.
    pub fn from_packets<'a>(packets: impl IntoIterator<Item = &'a Packet>) -> Option<ReconstructedView> {
        let mut by_origin: BTreeMap<VertexId, &Packet> = BTreeMap::new();
        for p in packets {
            match by_origin.get(&p.origin) {
                Some(q) if (&q.neighbors, &q.label, &q.cert) != (&p.neighbors, &p.label, &p.cert) => return None,
                Some(_) => {}
                None => {
                    by_origin.insert(p.origin, p);
                }
            }
        }
        let mut edges = Vec::new();
        for (&x, p) in &by_origin {
            for &y in &p.neighbors {
                let Some(q) = by_origin.get(&y) else { continue };
                if !q.neighbors.contains(&x) || x == y {
                    return None;
                }
                if x < y {
                    edges.push((x, y));
                }
            }
        }
        let graph = Graph::from_parts(by_origin.iter().map(|(&x, p)| (x, p.label.clone())), edges).ok()?;
        let certs = by_origin.iter().map(|(&x, p)| (x, p.cert.clone())).collect();
        Some(ReconstructedView { graph, certs })
    }

    /// `(G'[v, r], P'[v, r], v)`, or `None` if `v` is not an origin.
    pub fn view_at(&self, v: VertexId, r: usize) -> Option<LocalView> {
        if !self.graph.contains(v) {
            return None;
        }
        let keep: BTreeSet<VertexId> = self.graph.bfs_within(v, r).into_keys().collect();
        Some(LocalView::from_parts(v, r, self.graph.induced(&keep), self.certs.restrict(&keep)))
    }
}

/// The packets the honest prover gives `u`: one per vertex of `V[u, δ]`,
/// ordered by origin.
pub fn packets_for(g: &Graph, base_certs: &Certificates, u: VertexId, delta: usize) -> Result<PacketSet> {
    g.bfs_within(u, delta)
        .into_iter()
        .map(|(x, dist)| {
            let cert =
                base_certs.get(x).ok_or_else(|| Error::Input(format!("base certificate missing for vertex {x}")))?;
            Ok(Packet {
                origin: x,
                dist,
                neighbors: g.neighbors(x).clone(),
                label: g.label(x).cloned().unwrap_or_default(),
                cert: cert.clone(),
            })
        })
        .collect()
}

/// Broadcasts an arbitrary base assignment: the honest packet layout with the
/// given base certificates as payloads.
pub fn packetize(g: &Graph, base_certs: &Certificates, delta: usize) -> Result<Certificates> {
    let codec = PacketCodec::new(delta);
    let width = idbits(g.max_id());
    let vertices: Vec<VertexId> = g.vertices().collect();
    vertices
        .par_iter()
        .map(|&u| Ok((u, codec.encode_with_width(&packets_for(g, base_certs, u, delta)?, width))))
        .collect::<Result<Vec<_>>>()
        .map(|pairs| pairs.into_iter().collect())
}

/// Which of B1 to B6 failed first at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
}

impl<S: Scheme> ReducedScheme<S> {
    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn codec(&self) -> PacketCodec {
        self.codec
    }

    /// The radius of the base scheme.
    pub fn base_radius(&self) -> usize {
        self.base.radius()
    }

    /// Base prover output, for measuring `s(n)` and for lemma checks.
    pub fn base_certificates(&self, g: &Graph) -> Result<Certificates> {
        self.base.prove(g)
    }

    /// `Σ(P, x)` for every vertex of the view.
    pub fn decode_view(&self, view: &LocalView) -> BTreeMap<VertexId, PacketSet> {
        view.certs().iter().map(|(x, c)| (x, self.codec.decode(c))).collect()
    }

    /// `None` when the center accepts, otherwise the first failed condition.
    pub fn failed_condition(&self, view: &LocalView) -> Option<Condition> {
        let v = view.center();
        let sigma = self.decode_view(view);
        let mine = &sigma[&v];
        let neighbors = view.graph().neighbors(v);
        let from_neighbors =
            |u: VertexId| neighbors.iter().flat_map(|x| sigma[x].iter()).filter(move |p| p.origin == u);

        let origins: BTreeSet<VertexId> = mine.iter().map(|p| p.origin).collect();
        if origins.len() != mine.len() {
            return Some(Condition::B1);
        }

        let own_label = view.label(v).cloned().unwrap_or_default();
        let self_packet =
            mine.iter().any(|p| p.origin == v && p.dist == 0 && &p.neighbors == neighbors && p.label == own_label);
        if !self_packet {
            return Some(Condition::B2);
        }

        for p in mine.iter().filter(|p| p.origin != v) {
            let closest = from_neighbors(p.origin).map(|q| q.dist).min();
            if p.dist < 1 || closest.map(|m| m + 1) != Some(p.dist) {
                return Some(Condition::B3);
            }
        }

        for p in mine.iter().filter(|p| p.origin != v) {
            if !from_neighbors(p.origin).any(|q| q.dist < self.delta) {
                return Some(Condition::B4);
            }
        }
        let forwarded = neighbors.iter().flat_map(|x| sigma[x].iter()).filter(|q| q.dist < self.delta && q.origin != v);
        for q in forwarded {
            if !origins.contains(&q.origin) {
                return Some(Condition::B4);
            }
        }

        for p in mine {
            let agrees = |q: &&Packet| q.neighbors == p.neighbors && q.label == p.label && q.cert == p.cert;
            if !from_neighbors(p.origin).all(|q| agrees(&q)) {
                return Some(Condition::B5);
            }
        }

        let visible = sigma.values().flatten();
        let accepted = ReconstructedView::from_packets(visible)
            .and_then(|rv| rv.view_at(v, self.base.radius()))
            .is_some_and(|inner| self.base.verify(&inner));
        (!accepted).then_some(Condition::B6)
    }

    /// `(G(B[P, v, r - δ]), C(B[P, v, r - δ]))` at the center of a view.
    pub fn reconstruct(&self, view: &LocalView) -> Option<ReconstructedView> {
        let sigma = self.decode_view(view);
        ReconstructedView::from_packets(sigma.values().flatten())
    }

    /// Soundness search over base assignments: every vertex ranges over its
    /// candidate base certificates, and the reduced verifier judges the
    /// broadcast of each combination. A witness is returned already
    /// broadcast, so it re-validates with [`crate::certify::run_all`] on `self`.
    pub fn search_broadcasts(
        &self,
        g: &Graph,
        base_candidates: &BTreeMap<VertexId, Vec<BitString>>,
        config: &SearchConfig,
    ) -> Result<SoundnessOutcome> {
        let adapter = Broadcast { reduced: self };
        match soundness_search_in(&adapter, g, base_candidates, config)? {
            SoundnessOutcome::Fooled { witness, steps } => {
                Ok(SoundnessOutcome::Fooled { witness: packetize(g, &witness, self.delta)?, steps })
            }
            other => Ok(other),
        }
    }
}

impl<S: Scheme> Scheme for ReducedScheme<S> {
    fn name(&self) -> String {
        format!("reduce({}, {})", self.base.name(), self.delta)
    }

    fn radius(&self) -> usize {
        self.base.radius() - self.delta
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let base = self.base.prove(g)?;
        packetize(g, &base, self.delta)
    }

    fn verify(&self, view: &LocalView) -> bool {
        self.failed_condition(view).is_none()
    }
}

/// Radius-`r` scheme over base certificates whose verdict at `v` is the
/// reduced verdict at `v` on the broadcast of those certificates. Every
/// packet visible from `v` at radius `r - δ` describes a vertex within
/// radius `r`, and all of them are rebuilt from the same view, so the
/// neighborhoods it can see are enough.
struct Broadcast<'a, S> {
    reduced: &'a ReducedScheme<S>,
}

impl<S: Scheme> Scheme for Broadcast<'_, S> {
    fn name(&self) -> String {
        format!("broadcast({})", self.reduced.name())
    }

    fn radius(&self) -> usize {
        self.reduced.base.radius()
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        self.reduced.base.prove(g)
    }

    fn verify(&self, view: &LocalView) -> bool {
        let inner_radius = self.reduced.radius();
        let inner = view.restrict(inner_radius);
        let delta = self.reduced.delta;
        let codec = self.reduced.codec;
        let width = idbits(view.graph().max_id());
        let mut packed = Certificates::new();
        for x in inner.graph().vertices() {
            let Ok(packets) = packets_for(view.graph(), view.certs(), x, delta) else { return false };
            packed.insert(x, codec.encode_with_width(&packets, width));
        }
        let inner = LocalView::from_parts(view.center(), inner_radius, inner.graph().clone(), packed);
        self.reduced.verify(&inner)
    }
}
