//! The tree property `P_Δ` and its radius-`r` scheme.
//!
//! A member has a unique degree-2 root `R` joined to two complete
//! `(Δ-1)`-ary trees of equal depth. Every non-root vertex is labeled with
//! its sibling rank `a ∈ 1..Δ` in `ceil(log2 Δ)` bits, leaves append one bit
//! `b`, and the leaf string `S(G)`, read depth first with children by
//! ascending `a`, has the form `XX`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::tree::{distance_rule_holds, TreeCert};
use crate::bits::{gamma_len, idbits, BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

/// Bits of the sibling rank `a`.
pub fn rank_bits(delta: usize) -> usize {
    idbits(delta - 1)
}

/// Leaves of each of the two subtrees, `(Δ-1)^(depth-1)`.
pub fn half_len(delta: usize, depth: usize) -> Option<usize> {
    (delta - 1).checked_pow(u32::try_from(depth.checked_sub(1)?).ok()?)
}

/// Vertex count of a member, `1 + 2((Δ-1)^depth - 1)/(Δ-2)`.
pub fn vertex_count(delta: usize, depth: usize) -> Option<usize> {
    let leaves = (delta - 1).checked_pow(u32::try_from(depth).ok()?)?;
    Some(1 + 2 * (leaves - 1) / (delta - 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1, 2 or 3.
    pub property: u8,
    pub reason: String,
}

impl Violation {
    fn new(property: u8, reason: impl Into<String>) -> Self {
        Violation { property, reason: reason.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Property {}: {}", self.property, self.reason)
    }
}

/// A parsed member of `P_Δ` (Properties 1 and 2 hold; Property 3 is
/// reported by [`PDeltaInstance::leaf_string`] and [`pdelta_membership`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDeltaInstance {
    delta: usize,
    depth: usize,
    graph: Graph,
    root: VertexId,
    dist: BTreeMap<VertexId, usize>,
    parent: BTreeMap<VertexId, VertexId>,
    /// Children ordered by rank.
    children: BTreeMap<VertexId, Vec<VertexId>>,
    rank: BTreeMap<VertexId, usize>,
    bit: BTreeMap<VertexId, bool>,
}

impl PDeltaInstance {
    /// The member with leaf string `half · half`. Identifiers follow depth
    /// first positions (root 1, children by rank) unless `id_seed` asks for
    /// a seeded permutation.
    pub fn generate(delta: usize, depth: usize, half: &BitString, id_seed: Option<u64>) -> Result<Self> {
        if delta < 3 {
            return Err(Error::Input(format!("P_Δ needs Δ >= 3, got {delta}")));
        }
        if depth == 0 {
            return Err(Error::Input("P_Δ needs depth >= 1".into()));
        }
        let expected = half_len(delta, depth)
            .filter(|&h| h <= 1 << 20)
            .ok_or_else(|| Error::Input(format!("P_Δ instance with Δ = {delta}, depth = {depth} is too large")))?;
        if half.len() != expected {
            return Err(Error::Input(format!(
                "half string must have (Δ-1)^(depth-1) = {expected} bits, got {}",
                half.len()
            )));
        }
        let n = vertex_count(delta, depth).expect("checked above");
        let ids: Vec<VertexId> = match id_seed {
            None => (1..=n).collect(),
            Some(seed) => {
                let mut ids: Vec<VertexId> = (1..=n).collect();
                ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                ids
            }
        };
        let s: Vec<bool> = half.iter().chain(half.iter()).collect();

        // Depth-first construction by position; position p gets ids[p].
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut next = 0usize;
        let mut leaf_index = 0usize;
        let root = ids[next];
        next += 1;
        labels.push((root, BitString::new()));
        let mut stack: Vec<(VertexId, usize, usize)> = Vec::new();
        // (parent id, depth of child, rank), pushed in reverse so rank 1 pops first.
        stack.push((root, 1, 2));
        stack.push((root, 1, 1));
        while let Some((parent, d, a)) = stack.pop() {
            let v = ids[next];
            next += 1;
            edges.push((parent, v));
            let mut label = BitString::from_uint(a as u64, rank_bits(delta));
            if d == depth {
                label.push(s[leaf_index]);
                leaf_index += 1;
            } else {
                for child_rank in (1..delta).rev() {
                    stack.push((v, d + 1, child_rank));
                }
            }
            labels.push((v, label));
        }
        let graph = Graph::new(n, edges, labels)?;
        Self::parse(&graph, delta).map_err(|v| Error::Input(format!("generator produced a non-member: {v}")))
    }

    /// Checks Properties 1 and 2 and recovers the structure.
    pub fn parse(g: &Graph, delta: usize) -> std::result::Result<Self, Violation> {
        if delta < 3 {
            return Err(Violation::new(1, format!("Δ = {delta} is below 3")));
        }
        let twos: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
        let [root] = twos[..] else {
            return Err(Violation::new(1, format!("{} vertices of degree 2, expected exactly one", twos.len())));
        };
        if g.edge_count() + 1 != g.vertex_count() || !g.is_connected() {
            return Err(Violation::new(1, "graph is not a tree"));
        }
        let dist = g.bfs(root);
        let depth = dist.values().copied().max().unwrap_or(0);
        let mut parent = BTreeMap::new();
        let mut children: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (&v, &d) in &dist {
            let kids: Vec<VertexId> = g.neighbors(v).iter().copied().filter(|u| dist[u] == d + 1).collect();
            let wanted = match d {
                0 => 2,
                d if d == depth => 0,
                _ => delta - 1,
            };
            if kids.len() != wanted {
                return Err(Violation::new(
                    1,
                    format!("vertex {v} at distance {d} has {} children, expected {wanted}", kids.len()),
                ));
            }
            for &k in &kids {
                parent.insert(k, v);
            }
            children.insert(v, kids);
        }

        let rb = rank_bits(delta);
        let mut rank = BTreeMap::new();
        let mut bit = BTreeMap::new();
        for (&v, &d) in &dist {
            let label = g.label(v).cloned().unwrap_or_default();
            if d == 0 {
                if !label.is_empty() {
                    return Err(Violation::new(2, format!("root {v} has a non-empty label")));
                }
                continue;
            }
            let leaf = d == depth;
            let want = rb + usize::from(leaf);
            if label.len() != want {
                return Err(Violation::new(2, format!("vertex {v} has a {}-bit label, expected {want}", label.len())));
            }
            let a = label.prefix(rb).to_uint().unwrap_or(0) as usize;
            if !(1..delta).contains(&a) {
                return Err(Violation::new(2, format!("vertex {v} has rank {a} outside 1..{delta}")));
            }
            rank.insert(v, a);
            if leaf {
                bit.insert(v, label.get(rb).unwrap_or(false));
            }
        }
        for (&v, kids) in children.iter_mut() {
            kids.sort_by_key(|k| rank[k]);
            if kids.windows(2).any(|w| rank[&w[0]] == rank[&w[1]]) {
                return Err(Violation::new(2, format!("children of {v} share a rank")));
            }
        }
        Ok(PDeltaInstance { delta, depth, graph: g.clone(), root, dist, parent, children, rank, bit })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn dist(&self, v: VertexId) -> usize {
        self.dist[&v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(&v).copied()
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        self.children.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rank(&self, v: VertexId) -> Option<usize> {
        self.rank.get(&v).copied()
    }

    /// `(left, right)` children of the root.
    pub fn subtree_roots(&self) -> (VertexId, VertexId) {
        let kids = self.children(self.root);
        (kids[0], kids[1])
    }

    /// Leaves under `v` in natural order.
    pub fn leaves_under(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let kids = self.children(u);
            if kids.is_empty() {
                out.push(u);
            }
            stack.extend(kids.iter().rev());
        }
        out
    }

    /// Vertices of the subtree rooted at `v`, including `v`.
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children(u).iter().rev());
        }
        out
    }

    /// `S(v)`.
    pub fn leaf_string_under(&self, v: VertexId) -> BitString {
        self.leaves_under(v).into_iter().map(|l| self.bit[&l]).collect()
    }

    /// `S(G)`.
    pub fn leaf_string(&self) -> BitString {
        self.leaf_string_under(self.root)
    }

    /// Property 3.
    pub fn is_doubled(&self) -> bool {
        let s = self.leaf_string();
        let h = s.len() / 2;
        s.len().is_multiple_of(2) && s.prefix(h) == s.slice(h, s.len())
    }
}

/// Outcome of the `P_Δ` membership oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub violation: Option<Violation>,
}

/// Properties 1 to 3, naming the first one that fails.
pub fn pdelta_membership(g: &Graph, delta: usize) -> Membership {
    match PDeltaInstance::parse(g, delta) {
        Err(v) => Membership { member: false, violation: Some(v) },
        Ok(inst) if !inst.is_doubled() => Membership {
            member: false,
            violation: Some(Violation::new(3, format!("leaf string {} is not of the form XX", inst.leaf_string()))),
        },
        Ok(_) => Membership { member: true, violation: None },
    }
}

/// Decoded certificate of the `P_Δ` scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDeltaCert {
    pub root: VertexId,
    pub dist: usize,
    pub depth: usize,
    /// `S(v)` (possibly capped); present exactly when `dist >= r`.
    pub payload: Option<BitString>,
}

impl PDeltaCert {
    fn tree(&self) -> TreeCert {
        TreeCert { root: self.root, dist: self.dist }
    }
}

/// The radius-`r` scheme: root id, distance and depth for the tree
/// structure, and `S(v)` only at vertices at distance at least `r` from the
/// root. With `cap = Some(c)` every payload keeps only its first `c` bits;
/// the scheme stays complete but is no longer sound, which is what the
/// lower-bound lab exploits.
#[derive(Clone, Debug)]
pub struct PDeltaScheme {
    delta: usize,
    r: usize,
    cap: Option<usize>,
}

impl PDeltaScheme {
    pub fn new(delta: usize, r: usize) -> Result<Self> {
        Self::with_cap(delta, r, None)
    }

    pub fn with_cap(delta: usize, r: usize, cap: Option<usize>) -> Result<Self> {
        if delta < 3 || r == 0 {
            return Err(Error::Input(format!("pdelta needs Δ >= 3 and r >= 1, got Δ = {delta}, r = {r}")));
        }
        Ok(PDeltaScheme { delta, r, cap })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    fn capped(&self, s: &BitString) -> BitString {
        match self.cap {
            Some(c) if s.len() > c => s.prefix(c),
            _ => s.clone(),
        }
    }

    /// Length of the payload at distance `dist` in a tree of depth `depth`.
    pub fn payload_len(&self, depth: usize, dist: usize) -> Option<usize> {
        if dist < self.r || dist > depth {
            return Some(0);
        }
        let full = (self.delta - 1).checked_pow(u32::try_from(depth - dist).ok()?)?;
        Some(self.cap.map_or(full, |c| full.min(c)))
    }

    pub fn encode(&self, cert: &PDeltaCert) -> BitString {
        let mut w = BitWriter::new();
        w.write_gamma(cert.root);
        w.write_gamma(cert.dist);
        w.write_gamma(cert.depth);
        if let Some(p) = &cert.payload {
            w.write_bits(p);
        }
        w.finish()
    }

    pub fn decode(&self, bits: &BitString) -> Option<PDeltaCert> {
        let mut r = BitReader::new(bits);
        let root = r.read_gamma()?;
        let dist = r.read_gamma()?;
        let depth = r.read_gamma()?;
        if depth == 0 || dist > depth {
            return None;
        }
        let payload = if dist >= self.r {
            let len = self.payload_len(depth, dist)?;
            Some(r.read_bits(len)?)
        } else {
            None
        };
        r.is_exhausted().then_some(PDeltaCert { root, dist, depth, payload })
    }

    /// Parses a label given the vertex's role: `(rank, leaf bit)`.
    fn parse_label(&self, label: &BitString, dist: usize, depth: usize) -> Option<(usize, Option<bool>)> {
        let rb = rank_bits(self.delta);
        if dist == 0 {
            return label.is_empty().then_some((0, None));
        }
        let leaf = dist == depth;
        if label.len() != rb + usize::from(leaf) {
            return None;
        }
        let a = label.prefix(rb).to_uint()? as usize;
        if !(1..self.delta).contains(&a) {
            return None;
        }
        Some((a, if leaf { label.get(rb) } else { None }))
    }

    /// The check at the root: the pieces of `S` visible at distance `r`
    /// (or the leaf bits, if the whole tree is visible) must split into two
    /// equal halves.
    fn root_check(&self, view: &LocalView, mine: &PDeltaCert) -> bool {
        let v = view.center();
        let g = view.graph();
        let dist = view.distances();
        let target = self.r.min(mine.depth);
        let mut pieces: Vec<(Vec<usize>, BitString)> = Vec::new();
        for (&w, &d) in &dist {
            if d != target {
                continue;
            }
            let mut path = Vec::with_capacity(d);
            let mut cur = w;
            while cur != v {
                let closer: Vec<VertexId> =
                    g.neighbors(cur).iter().copied().filter(|u| dist.get(u) == Some(&(dist[&cur] - 1))).collect();
                let [up] = closer[..] else { return false };
                let Some(cert) = view.cert(cur).and_then(|c| self.decode(c)) else { return false };
                let Some(label) = view.label(cur) else { return false };
                let Some((a, _)) = self.parse_label(label, cert.dist, cert.depth) else { return false };
                path.push(a);
                cur = up;
            }
            path.reverse();
            let Some(cert) = view.cert(w).and_then(|c| self.decode(c)) else { return false };
            let piece = if self.r > mine.depth {
                let Some((_, Some(b))) = view.label(w).and_then(|l| self.parse_label(l, cert.dist, cert.depth)) else {
                    return false;
                };
                self.capped(&BitString::from_bits(vec![b]))
            } else {
                match cert.payload {
                    Some(p) => p,
                    None => return false,
                }
            };
            pieces.push((path, piece));
        }
        pieces.sort();
        let mut firsts: Vec<usize> = pieces.iter().map(|(p, _)| p[0]).collect();
        firsts.dedup();
        let [left, right] = firsts[..] else { return false };
        let side = |a: usize| pieces.iter().filter(move |(p, _)| p[0] == a).map(|(p, s)| (&p[1..], s));
        let (l, r): (Vec<_>, Vec<_>) = (side(left).collect(), side(right).collect());
        if self.r > mine.depth {
            let join = |xs: &[(&[usize], &BitString)]| BitString::concat(xs.iter().map(|(_, s)| *s));
            return l.len() == r.len() && join(&l) == join(&r);
        }
        l.len() == r.len() && l.iter().zip(&r).all(|((pa, sa), (pb, sb))| pa == pb && sa == sb)
    }
}

impl Scheme for PDeltaScheme {
    fn name(&self) -> String {
        match self.cap {
            None => format!("pdelta:{}:{}", self.delta, self.r),
            Some(c) => format!("pdelta:{}:{}:cap{c}", self.delta, self.r),
        }
    }

    fn radius(&self) -> usize {
        self.r
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let m = pdelta_membership(g, self.delta);
        if let Some(v) = m.violation {
            return Err(Error::not_member(self.name(), v.to_string()));
        }
        let inst = PDeltaInstance::parse(g, self.delta).expect("membership checked");
        Ok(g.vertices()
            .map(|v| {
                let dist = inst.dist(v);
                let payload = (dist >= self.r).then(|| self.capped(&inst.leaf_string_under(v)));
                let cert = PDeltaCert { root: inst.root(), dist, depth: inst.depth(), payload };
                (v, self.encode(&cert))
            })
            .collect())
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let g = view.graph();
        let decode = |u: VertexId| view.cert(u).and_then(|c| self.decode(c));
        let Some(mine) = decode(v) else { return false };
        let Some(theirs) = g.neighbors(v).iter().map(|&u| decode(u).map(|c| (u, c))).collect::<Option<Vec<_>>>() else {
            return false;
        };

        let tree: Vec<TreeCert> = theirs.iter().map(|(_, c)| c.tree()).collect();
        if !distance_rule_holds(v, mine.tree(), &tree) || theirs.iter().any(|(_, c)| c.depth != mine.depth) {
            return false;
        }
        let wanted_degree = match mine.dist {
            0 => 2,
            d if d == mine.depth => 1,
            _ => self.delta,
        };
        if g.degree(v) != wanted_degree {
            return false;
        }

        let Some((_, own_bit)) = view.label(v).and_then(|l| self.parse_label(l, mine.dist, mine.depth)) else {
            return false;
        };
        let mut kids: Vec<(usize, &PDeltaCert)> = Vec::new();
        for (u, c) in &theirs {
            if c.dist == mine.dist + 1 {
                let Some((a, _)) = view.label(*u).and_then(|l| self.parse_label(l, c.dist, c.depth)) else {
                    return false;
                };
                kids.push((a, c));
            }
        }
        kids.sort_by_key(|(a, _)| *a);
        if kids.windows(2).any(|w| w[0].0 == w[1].0) {
            return false;
        }

        if let Some(payload) = &mine.payload {
            let expected = match own_bit {
                Some(b) => self.capped(&BitString::from_bits(vec![b])),
                None => {
                    let parts: Option<Vec<&BitString>> = kids.iter().map(|(_, c)| c.payload.as_ref()).collect();
                    let Some(parts) = parts else { return false };
                    self.capped(&BitString::concat(parts))
                }
            };
            if payload != &expected {
                return false;
            }
        }

        mine.dist != 0 || self.root_check(view, &mine)
    }
}

/// Lemma 6's size: payload `(Δ-1)^(depth-r)` bits, at most `n / (2(Δ-1)^(r-1))`,
/// plus three gamma-coded integers bounded by `n`.
pub fn lemma6_bound(delta: usize, r: usize, n: usize) -> usize {
    let denom = (delta - 1).saturating_pow(u32::try_from(r.saturating_sub(1)).unwrap_or(u32::MAX));
    n / (2 * denom) + 3 * gamma_len(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{check_completeness, run_all};
    use crate::graph::path;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn smallest_instance() {
        let inst = PDeltaInstance::generate(3, 1, &bs("1"), None).unwrap();
        let g = inst.graph();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(inst.leaf_string(), bs("11"));
        assert_eq!(g.label(2), Some(&bs("011")));
        assert_eq!(g.label(3), Some(&bs("101")));
        assert!(pdelta_membership(g, 3).member);
    }

    #[test]
    fn generated_shape() {
        let inst = PDeltaInstance::generate(3, 2, &bs("10"), None).unwrap();
        assert_eq!(inst.graph().vertex_count(), 7);
        assert_eq!(inst.leaf_string(), bs("1010"));
        // Depth-first ids: 1 root, 2 left child, 3 and 4 its leaves, 5 right child...
        assert_eq!(inst.children(1), &[2, 5]);
        assert_eq!(inst.children(2), &[3, 4]);
        assert_eq!(inst.graph().distance(1, 7).unwrap(), 2);
        assert_eq!(inst.graph().ball(1, 1).unwrap().len(), 3);
        let permuted = PDeltaInstance::generate(3, 2, &bs("10"), Some(9)).unwrap();
        assert!(pdelta_membership(permuted.graph(), 3).member);
        assert_eq!(permuted.leaf_string(), bs("1010"));
    }

    #[test]
    fn membership_names_the_failing_property() {
        let inst = PDeltaInstance::generate(3, 2, &bs("10"), None).unwrap();
        let g = inst.graph();
        let flipped = g.clone().with_labels([(7, g.label(7).unwrap().flipped(2))]).unwrap();
        let m = pdelta_membership(&flipped, 3);
        assert_eq!(m.violation.map(|v| v.property), Some(3));
        assert_eq!(pdelta_membership(&path(5), 3).violation.map(|v| v.property), Some(1));
        let relabeled = g.clone().with_labels([(1, bs("1"))]).unwrap();
        assert_eq!(pdelta_membership(&relabeled, 3).violation.map(|v| v.property), Some(2));
        assert!(PDeltaInstance::generate(3, 2, &bs("1"), None).is_err());
        assert!(PDeltaInstance::generate(2, 2, &bs("1"), None).is_err());
    }

    #[test]
    fn scheme_is_complete_across_radii() {
        for delta in [3, 4] {
            for depth in 1..=3 {
                let h = half_len(delta, depth).unwrap();
                let graphs: Vec<Graph> = (0..6u64)
                    .map(|seed| {
                        let half: BitString = (0..h).map(|i| (seed >> (i % 6)) & 1 == 1).collect();
                        PDeltaInstance::generate(delta, depth, &half, Some(seed)).unwrap().into_graph()
                    })
                    .collect();
                for r in 1..=depth + 1 {
                    let scheme = PDeltaScheme::new(delta, r).unwrap();
                    let report = check_completeness(&scheme, &graphs).unwrap();
                    assert!(report.is_ok(), "Δ={delta} depth={depth} r={r}: {:?}", report.failures.first());
                }
            }
        }
    }

    #[test]
    fn flipped_leaf_with_honest_style_certificates_is_rejected() {
        let inst = PDeltaInstance::generate(3, 2, &bs("10"), None).unwrap();
        let scheme = PDeltaScheme::new(3, 1).unwrap();
        let certs = scheme.prove(inst.graph()).unwrap();
        let g = inst.graph();
        let bad = g.clone().with_labels([(7, g.label(7).unwrap().flipped(2))]).unwrap();
        let verdict = run_all(&scheme, &bad, &certs).unwrap();
        assert!(!verdict.accepted);
        assert!(verdict.rejecting.contains(&7));
    }

    #[test]
    fn root_rejects_an_undoubled_string_it_can_see() {
        // r = 1 reassembles from the two children's payloads.
        let scheme = PDeltaScheme::new(3, 1).unwrap();
        let a = PDeltaInstance::generate(3, 2, &bs("10"), None).unwrap();
        let b = PDeltaInstance::generate(3, 2, &bs("01"), None).unwrap();
        let ca = scheme.prove(a.graph()).unwrap();
        let cb = scheme.prove(b.graph()).unwrap();
        // Right subtree of b glued under a's left subtree.
        let mut labels: Vec<(VertexId, BitString)> = a.graph().labels().map(|(v, l)| (v, l.clone())).collect();
        let mut certs = ca.clone();
        for v in b.subtree(5) {
            labels.push((v, b.graph().label(v).unwrap().clone()));
            certs.insert(v, cb.get(v).unwrap().clone());
        }
        let glued = a.graph().clone().with_labels(labels).unwrap();
        assert!(!pdelta_membership(&glued, 3).member);
        let verdict = run_all(&scheme, &glued, &certs).unwrap();
        assert_eq!(verdict.rejecting, vec![1]);
    }

    #[test]
    fn payload_length_follows_lemma6() {
        let scheme = PDeltaScheme::new(3, 2).unwrap();
        assert_eq!(scheme.payload_len(4, 2), Some(4));
        assert_eq!(scheme.payload_len(4, 1), Some(0));
        let capped = PDeltaScheme::with_cap(3, 1, Some(1)).unwrap();
        assert_eq!(capped.payload_len(3, 1), Some(1));
        assert_eq!(capped.name(), "pdelta:3:1:cap1");
    }
}
