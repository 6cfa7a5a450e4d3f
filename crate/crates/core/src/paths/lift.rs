use std::collections::BTreeMap;

use super::canonical::{canonical_assignment, canonical_rule};
use crate::bits::{BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

/// A weak scheme made identifier-independent: each certificate is
/// `gamma(J(v))` followed by the weak certificate computed under `J`.
pub struct LiftedScheme<W> {
    weak: W,
}

pub fn lift_weak<W: Scheme>(weak: W) -> LiftedScheme<W> {
    LiftedScheme { weak }
}

impl<W: Scheme> LiftedScheme<W> {
    pub fn weak(&self) -> &W {
        &self.weak
    }

    fn split(cert: &BitString) -> Option<(usize, BitString)> {
        let mut r = BitReader::new(cert);
        let j = r.read_gamma()?;
        Some((j, r.read_rest()))
    }
}

/// `g` with every identifier replaced by its position.
pub(crate) fn renumbered(g: &Graph, j: &BTreeMap<VertexId, usize>) -> Result<Graph> {
    g.relabel_ids(|v| j[&v])
}

impl<W: Scheme> Scheme for LiftedScheme<W> {
    fn name(&self) -> String {
        format!("lift({})", self.weak.name())
    }

    fn radius(&self) -> usize {
        self.weak.radius().max(1)
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let j = canonical_assignment(g).ok_or_else(|| Error::not_member(self.name(), "graph is not a path"))?;
        let weak = self.weak.prove(&renumbered(g, &j)?)?;
        Ok(g.vertices()
            .map(|v| {
                let mut w = BitWriter::new();
                w.write_gamma(j[&v]);
                w.write_bits(weak.get(j[&v]).expect("weak prover is total"));
                (v, w.finish())
            })
            .collect())
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let g = view.graph();
        let mut j = BTreeMap::new();
        let mut certs = Certificates::new();
        for u in g.vertices() {
            let Some((ju, rest)) = view.cert(u).and_then(Self::split) else { return false };
            if ju == 0 || certs.insert(ju, rest).is_some() {
                return false;
            }
            j.insert(u, ju);
        }
        let around: Vec<usize> = g.neighbors(v).iter().map(|u| j[u]).collect();
        if !canonical_rule(j[&v], &around) {
            return false;
        }
        let Ok(h) = renumbered(g, &j) else { return false };
        self.weak.verify(&LocalView::from_parts(j[&v], view.radius(), h, certs))
    }
}
