//! Cut and glue on `P_Δ`.
//!
//! Instances share the depth-first identifier assignment, so two of them
//! differ only in their leaf bits. If a scheme gives two instances with
//! different leaf strings the same fingerprint around the root (the ball
//! `T = B(R, r)` with identifiers, labels, edges and certificates), then the
//! left subtree of one glued to the root and right subtree of the other,
//! with certificates taken along, is a non-member every vertex accepts.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{BitString, BitWriter};
use crate::certify::{run_all, Certificates, Scheme, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::schemes::pdelta::{half_len, Membership};
use crate::schemes::{pdelta_membership, PDeltaInstance, PDeltaScheme};

/// Canonical bits of `T = B(R, r)` and the certificates on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub BitString);

/// Vertices in increasing identifier order as
/// `gamma(id) gamma(|label|) label gamma(|cert|) cert`, then the edges
/// `gamma(u) gamma(v)` with `u < v` in increasing order, each list preceded
/// by its length.
pub fn fingerprint(inst: &PDeltaInstance, certs: &Certificates, r: usize) -> Fingerprint {
    let g = inst.graph();
    let ball = g.ball(inst.root(), r).expect("root is a vertex");
    let t = g.induced(&ball);
    let mut w = BitWriter::new();
    w.write_gamma(t.vertex_count());
    for v in t.vertices() {
        w.write_gamma(v);
        w.write_string(t.label(v).expect("vertex of t"));
        w.write_string(certs.get(v).map_or(&BitString::new(), |c| c));
    }
    let edges: Vec<_> = t.edges().collect();
    w.write_gamma(edges.len());
    for (u, v) in edges {
        w.write_gamma(u);
        w.write_gamma(v);
    }
    Fingerprint(w.finish())
}

/// Every instance with the given shape, leaf strings `XX` for all `X` in
/// increasing numeric order.
pub fn enumerate_instances(delta: usize, depth: usize) -> Result<Vec<PDeltaInstance>> {
    let h = half_len(delta, depth).filter(|&h| h <= 16).ok_or_else(|| {
        Error::Input(format!("enumerating Δ = {delta}, depth = {depth} needs more than 2^16 instances"))
    })?;
    (0..1u64 << h)
        .into_par_iter()
        .map(|x| PDeltaInstance::generate(delta, depth, &BitString::from_uint(x, h), None))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionSearch {
    pub instances: usize,
    pub distinct_strings: usize,
    pub distinct_fingerprints: usize,
    /// Indices into the enumeration: the first `j` whose fingerprint
    /// repeats an earlier `i` with a different leaf string.
    pub pair: Option<(usize, usize)>,
}

/// Fingerprints every instance under `scheme` and returns the first
/// collision between different leaf strings. The answer does not depend on
/// how the fingerprinting is parallelized.
pub fn find_collision(scheme: &dyn Scheme, instances: &[PDeltaInstance], r: usize) -> Result<CollisionSearch> {
    let prints: Vec<(BitString, Fingerprint)> = instances
        .par_iter()
        .map(|inst| Ok((inst.leaf_string(), fingerprint(inst, &scheme.prove(inst.graph())?, r))))
        .collect::<Result<_>>()?;
    let mut seen: HashMap<&Fingerprint, Vec<usize>> = HashMap::new();
    let mut pair = None;
    for (j, (s, f)) in prints.iter().enumerate() {
        let earlier = seen.entry(f).or_default();
        if pair.is_none() {
            if let Some(&i) = earlier.iter().find(|&&i| prints[i].0 != *s) {
                pair = Some((i, j));
            }
        }
        earlier.push(j);
    }
    let mut strings: Vec<&BitString> = prints.iter().map(|(s, _)| s).collect();
    strings.sort();
    strings.dedup();
    Ok(CollisionSearch {
        instances: prints.len(),
        distinct_strings: strings.len(),
        distinct_fingerprints: seen.len(),
        pair,
    })
}

/// Bits of `T` that can differ between instances of one shape under a
/// `P_Δ` scheme: payloads within distance `r` of the root, plus leaf bits
/// if leaves are inside `T`. Everything else in the fingerprint is fixed by
/// the shared identifiers, so there are at most `2^bits` fingerprints.
pub fn pdelta_fingerprint_bits(scheme: &PDeltaScheme, depth: usize, r: usize) -> usize {
    let delta = scheme.delta();
    (0..=r.min(depth))
        .map(|k| {
            let count = if k == 0 { 1 } else { 2 * (delta - 1).pow(k as u32 - 1) };
            let payload = scheme.payload_len(depth, k).unwrap_or(usize::MAX);
            count * (payload + usize::from(k == depth))
        })
        .sum()
}

#[derive(Clone, Debug)]
pub struct GlueResult {
    pub graph: Graph,
    pub certs: Certificates,
    pub left: BitString,
    pub right: BitString,
    pub membership: Membership,
}

/// `H'`: the root and left subtree of `h1`, the right subtree of `h2`, and
/// each part's certificates under `scheme`.
pub fn glue(scheme: &dyn Scheme, h1: &PDeltaInstance, h2: &PDeltaInstance) -> Result<GlueResult> {
    if h1.graph().strip_labels() != h2.graph().strip_labels() {
        return Err(Error::Input("glue needs two instances on the same identified tree".into()));
    }
    if h1.leaf_string() == h2.leaf_string() {
        return Err(Error::Input("glue needs two instances with different leaf strings".into()));
    }
    let c1 = scheme.prove(h1.graph())?;
    let c2 = scheme.prove(h2.graph())?;
    let right = h2.subtree(h2.subtree_roots().1);
    let mut certs = c1.clone();
    for &v in &right {
        certs.insert(v, c2.get(v).cloned().unwrap_or_default());
    }
    let graph =
        h1.graph().clone().with_labels(right.iter().map(|&v| (v, h2.graph().label(v).cloned().unwrap_or_default())))?;
    let membership = pdelta_membership(&graph, h1.delta());
    let half = |inst: &PDeltaInstance| {
        let s = inst.leaf_string();
        s.prefix(s.len() / 2)
    };
    Ok(GlueResult { graph, certs, left: half(h1), right: half(h2), membership })
}

/// Runs the scheme's verifier on `H'` with the glued certificates.
pub fn demonstrate(scheme: &dyn Scheme, glued: &GlueResult) -> Result<Verdict> {
    run_all(scheme, &glued.graph, &glued.certs)
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueDemo {
    pub scheme: String,
    pub delta: usize,
    pub depth: usize,
    pub r: usize,
    pub search: CollisionSearch,
    pub fingerprint_space_bits: usize,
    pub collision: Option<GlueOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueOutcome {
    pub left: BitString,
    pub right: BitString,
    pub glued_leaf_string: BitString,
    pub membership: Membership,
    pub verdict: Verdict,
}

/// The whole experiment for the `P_Δ` scheme with payloads capped at
/// `cap` bits (`None` for the full scheme).
pub fn glue_demo(delta: usize, depth: usize, r: usize, cap: Option<usize>) -> Result<(GlueDemo, Option<GlueResult>)> {
    let scheme = PDeltaScheme::with_cap(delta, r, cap)?;
    let instances = enumerate_instances(delta, depth)?;
    let search = find_collision(&scheme, &instances, r)?;
    let mut glued = None;
    let collision = match search.pair {
        None => None,
        Some((i, j)) => {
            let g = glue(&scheme, &instances[i], &instances[j])?;
            let verdict = demonstrate(&scheme, &g)?;
            let glued_leaf_string = PDeltaInstance::parse(&g.graph, delta)
                .map(|inst| inst.leaf_string())
                .map_err(|v| Error::Input(format!("glued graph lost its shape: {v}")))?;
            let outcome = GlueOutcome {
                left: g.left.clone(),
                right: g.right.clone(),
                glued_leaf_string,
                membership: g.membership.clone(),
                verdict,
            };
            glued = Some(g);
            Some(outcome)
        }
    };
    let demo = GlueDemo {
        scheme: scheme.name(),
        delta,
        depth,
        r,
        search,
        fingerprint_space_bits: pdelta_fingerprint_bits(&scheme, depth, r),
        collision,
    };
    Ok((demo, glued))
}
