use std::collections::BTreeMap;

use super::{Graph, VertexId};
use crate::bits::BitString;
use crate::certify::Certificates;
use crate::error::{Error, Result};

/// What a verifier sees at one vertex: the induced ball `G[v, r]` together
/// with the certificates restricted to it.
///
/// Verifiers never receive anything else, so a verifier of radius `r` is
/// `r`-local by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalView {
    center: VertexId,
    radius: usize,
    graph: Graph,
    certs: Certificates,
}

impl LocalView {
    /// Assembles a view from parts that are already restricted. The caller
    /// guarantees `graph` is the radius-`radius` ball around `center` of
    /// whatever graph it describes; certificates missing from `certs` are
    /// treated as empty.
    pub fn from_parts(center: VertexId, radius: usize, graph: Graph, certs: Certificates) -> Self {
        let certs = graph.vertices().map(|v| (v, certs.get(v).cloned().unwrap_or_default())).collect();
        Self { center, radius, graph, certs }
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn certs(&self) -> &Certificates {
        &self.certs
    }

    pub fn cert(&self, v: VertexId) -> Option<&BitString> {
        self.certs.get(v)
    }

    pub fn label(&self, v: VertexId) -> Option<&BitString> {
        self.graph.label(v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.graph.contains(v)
    }

    /// Distances from the center. Inside an induced ball these equal the
    /// host-graph distances.
    pub fn distances(&self) -> BTreeMap<VertexId, usize> {
        self.graph.bfs(self.center)
    }

    /// The same view cut down to a smaller radius.
    pub fn restrict(&self, radius: usize) -> LocalView {
        if radius >= self.radius {
            return self.clone();
        }
        let keep = self.graph.bfs_within(self.center, radius).into_keys().collect();
        let graph = self.graph.induced(&keep);
        let certs = self.certs.restrict(&keep);
        LocalView { center: self.center, radius, graph, certs }
    }

    pub(crate) fn set_cert(&mut self, v: VertexId, cert: BitString) {
        self.certs.insert(v, cert);
    }
}

/// `(G[v, r], P[v, r], v)`.
pub fn induced_view(g: &Graph, certs: &Certificates, v: VertexId, r: usize) -> Result<LocalView> {
    let ball = g.ball(v, r)?;
    if let Some(missing) = ball.iter().find(|&&u| certs.get(u).is_none()) {
        return Err(Error::Input(format!("certificate assignment has no entry for vertex {missing}")));
    }
    Ok(LocalView { center: v, radius: r, graph: g.induced(&ball), certs: certs.restrict(&ball) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, random_bounded_degree};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn empty_certs(g: &Graph) -> Certificates {
        g.vertices().map(|v| (v, BitString::new())).collect()
    }

    #[test]
    fn radius_zero_is_a_single_vertex() {
        let g = cycle(5);
        let view = induced_view(&g, &empty_certs(&g), 3, 0).unwrap();
        assert_eq!(view.graph().vertex_count(), 1);
        assert_eq!(view.graph().edge_count(), 0);
        assert_eq!(view.certs().len(), 1);
    }

    #[test]
    fn large_radius_sees_everything() {
        let g = path(6);
        let view = induced_view(&g, &empty_certs(&g), 1, 5).unwrap();
        assert_eq!(view.graph(), &g);
    }

    #[test]
    fn cycle_six_radius_two_is_a_five_vertex_path() {
        let g = cycle(6);
        let view = induced_view(&g, &empty_certs(&g), 1, 2).unwrap();
        // Brute force: vertices at cyclic distance <= 2 from 1, and the edges
        // of the cycle with both ends kept.
        let keep: BTreeSet<usize> = (1..=6usize)
            .filter(|&u| {
                let d = (u as i64 - 1).rem_euclid(6) as usize;
                d.min(6 - d) <= 2
            })
            .collect();
        assert_eq!(keep, BTreeSet::from([1, 2, 3, 5, 6]));
        let expected: Vec<(usize, usize)> = g.edges().filter(|(a, b)| keep.contains(a) && keep.contains(b)).collect();
        assert_eq!(view.graph().vertices().collect::<BTreeSet<_>>(), keep);
        assert_eq!(view.graph().edges().collect::<Vec<_>>(), expected);
        assert_eq!(expected.len(), 4);
        assert_eq!(view.graph().max_degree(), 2);
    }

    #[test]
    fn missing_certificates_are_an_input_error() {
        let g = path(3);
        let certs: Certificates = [(1, BitString::new())].into_iter().collect();
        assert!(induced_view(&g, &certs, 1, 1).is_err());
        assert!(induced_view(&g, &empty_certs(&g), 9, 1).is_err());
    }

    proptest! {
        #[test]
        fn restriction_composes(n in 2usize..14, d in 2usize..5, seed in any::<u64>(), a in 0usize..100, r in 0usize..5, cut in 0usize..5) {
            let g = random_bounded_degree(n, d, seed).unwrap();
            let certs: Certificates = g.vertices().map(|v| (v, BitString::from_uint(v as u64, 8))).collect();
            let v = a % n + 1;
            let small = cut.min(r);
            let wide = induced_view(&g, &certs, v, r).unwrap();
            prop_assert_eq!(wide.restrict(small), induced_view(&g, &certs, v, small).unwrap());
        }
    }
}
