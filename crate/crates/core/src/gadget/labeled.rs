use super::{encode_graph, gadget_size, gadgets, Gadget};
use crate::bits::{gamma_len, BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::Result;
use crate::graph::{induced_view, Graph, LocalView, VertexId};

/// What an original vertex carries under [`WrappedLabeled`]: the first
/// identifier of its gadget block, the unlabeled certificates of the block in
/// block order, and its own unlabeled certificate.
///
/// Layout: `gamma(first) (gamma(|c|) c)* gamma(|own|) own`. The number of
/// block entries is fixed by the vertex's label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCert {
    pub first: VertexId,
    pub block: Vec<BitString>,
    pub own: BitString,
}

impl LabeledCert {
    pub fn encode(&self) -> BitString {
        let mut w = BitWriter::new();
        w.write_gamma(self.first);
        for c in &self.block {
            w.write_string(c);
        }
        w.write_string(&self.own);
        w.finish()
    }

    pub fn decode(bits: &BitString, label: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let first = r.read_gamma()?;
        let block = (0..gadget_size(label)).map(|_| r.read_string()).collect::<Option<Vec<_>>>()?;
        let own = r.read_string()?;
        (first >= 1 && r.is_exhausted()).then_some(LabeledCert { first, block, own })
    }
}

/// An unlabeled scheme for `g(G)` run on `G` itself: every vertex carries
/// its gadget, rebuilds the gadgets it can see and simulates the unlabeled
/// verifier at itself and at each vertex of its own gadget.
pub struct WrappedLabeled<U> {
    inner: U,
}

pub fn wrap_labeled<U: Scheme>(inner: U) -> WrappedLabeled<U> {
    WrappedLabeled { inner }
}

/// `gamma(N) + (7 + 4ℓ)(gamma(s) + s)` for encodings with `N` vertices,
/// labels of at most `ℓ` bits and unlabeled certificates of at most `s` bits.
pub fn labeled_size_bound(l: usize, s: usize, encoded_n: usize) -> usize {
    gamma_len(encoded_n) + (7 + 4 * l) * (gamma_len(s) + s)
}

impl<U: Scheme> WrappedLabeled<U> {
    pub fn inner(&self) -> &U {
        &self.inner
    }

    /// Packs an unlabeled assignment on `g(G)` into certificates on `G`.
    pub fn certificates_for(&self, g: &Graph, inner_certs: &Certificates) -> Certificates {
        let cert = |v: VertexId| inner_certs.get(v).cloned().unwrap_or_default();
        gadgets(g)
            .into_iter()
            .map(|(v, gadget)| {
                let block = gadget.vertices().into_iter().map(cert).collect();
                (v, LabeledCert { first: gadget.marker, block, own: cert(v) }.encode())
            })
            .collect()
    }
}

impl<U: Scheme> Scheme for WrappedLabeled<U> {
    fn name(&self) -> String {
        format!("wrap-labeled({})", self.inner.name())
    }

    fn radius(&self) -> usize {
        self.inner.radius()
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let h = encode_graph(g);
        let inner_certs = self.inner.prove(&h)?;
        Ok(self.certificates_for(g, &inner_certs))
    }

    fn verify(&self, view: &LocalView) -> bool {
        let g = view.graph();
        let mut vertices: Vec<(VertexId, BitString)> = Vec::new();
        let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
        let mut certs = Certificates::new();
        let mut own_block = Vec::new();
        for u in g.vertices() {
            let label = g.label(u).cloned().unwrap_or_default();
            let Some(c) = view.cert(u).and_then(|c| LabeledCert::decode(c, &label)) else { return false };
            let gadget = Gadget::layout(u, &label, c.first);
            let ids = gadget.vertices();
            vertices.push((u, BitString::new()));
            certs.insert(u, c.own);
            for (&x, cx) in ids.iter().zip(c.block) {
                vertices.push((x, BitString::new()));
                certs.insert(x, cx);
            }
            edges.extend(gadget.edges());
            if u == view.center() {
                own_block = ids;
            }
        }
        let Ok(h) = Graph::from_parts(vertices, edges) else { return false };
        std::iter::once(view.center())
            .chain(own_block)
            .all(|w| induced_view(&h, &certs, w, self.inner.radius()).is_ok_and(|local| self.inner.verify(&local)))
    }
}
