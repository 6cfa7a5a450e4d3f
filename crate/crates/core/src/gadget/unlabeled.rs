use std::collections::BTreeSet;

use super::{decode_graph, gadgets};
use crate::bits::{gamma_len, BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

/// `(b_l, b_p, s, o)`. A leaf's certificate is the single bit `1`; any
/// other certificate is `0 b_p gamma(|s|) s o`, with `o` running to the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrappedCert {
    pub leaf: bool,
    pub on_path: bool,
    pub s: BitString,
    pub o: BitString,
}

impl WrappedCert {
    pub fn leaf() -> Self {
        WrappedCert { leaf: true, on_path: false, s: BitString::new(), o: BitString::new() }
    }

    pub fn encode(&self) -> BitString {
        let mut w = BitWriter::new();
        w.write_bit(self.leaf);
        if !self.leaf {
            w.write_bit(self.on_path);
            w.write_string(&self.s);
            w.write_bits(&self.o);
        }
        w.finish()
    }

    pub fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        if r.read_bit()? {
            return r.is_exhausted().then(Self::leaf);
        }
        let on_path = r.read_bit()?;
        let s = r.read_string()?;
        Some(WrappedCert { leaf: false, on_path, s, o: r.read_rest() })
    }
}

/// A labeled scheme run on the unlabeled image `g(G)`: gadget vertices
/// carry suffixes of their host's label, hosts carry the full label and the
/// labeled certificate, and hosts simulate the labeled verifier on the
/// originals they can see.
pub struct WrappedUnlabeled<S> {
    base: S,
}

pub fn wrap_unlabeled<S: Scheme>(base: S) -> WrappedUnlabeled<S> {
    WrappedUnlabeled { base }
}

/// `2 + gamma(ℓ) + ℓ + s`: the largest wrapped certificate for labels of
/// at most `ℓ` bits and labeled certificates of at most `s` bits.
pub fn unlabeled_size_bound(l: usize, s: usize) -> usize {
    2 + gamma_len(l) + l + s
}

impl<S: Scheme> WrappedUnlabeled<S> {
    pub fn base(&self) -> &S {
        &self.base
    }

    /// Wrapped certificates for `g(G)` built around a given labeled
    /// assignment.
    pub fn certificates_for(&self, g: &Graph, base_certs: &Certificates) -> Result<Certificates> {
        let mut out = Certificates::new();
        for (v, gadget) in gadgets(g) {
            let label = g.label(v).cloned().unwrap_or_default();
            let o = base_certs.get(v).cloned().ok_or_else(|| Error::Input(format!("no certificate for {v}")))?;
            out.insert(v, WrappedCert { leaf: false, on_path: false, s: label.clone(), o }.encode());
            out.insert(gadget.marker, WrappedCert::leaf().encode());
            for (i, (p, leaves)) in gadget.path.iter().zip(&gadget.leaves).enumerate() {
                let s = label.slice(i.min(label.len()), label.len());
                out.insert(*p, WrappedCert { leaf: false, on_path: true, s, o: BitString::new() }.encode());
                for &l in leaves {
                    out.insert(l, WrappedCert::leaf().encode());
                }
            }
        }
        Ok(out)
    }

    fn path_vertex_ok(&self, mine: &WrappedCert, bit: bool, inner: &[&WrappedCert]) -> bool {
        let [a, b] = inner[..] else { return false };
        let next_ok = |w: &WrappedCert| {
            w.on_path
                && w.s.len() + 1 == mine.s.len()
                && mine.s.get(0) == Some(bit)
                && mine.s.slice(1, mine.s.len()) == w.s
        };
        let prev_ok = |x: &WrappedCert| (!x.on_path && x.s == mine.s) || (x.on_path && x.s.len() == mine.s.len() + 1);
        mine.on_path && mine.o.is_empty() && ((next_ok(a) && prev_ok(b)) || (next_ok(b) && prev_ok(a)))
    }
}

impl<S: Scheme> Scheme for WrappedUnlabeled<S> {
    fn name(&self) -> String {
        format!("wrap-unlabeled({})", self.base.name())
    }

    fn radius(&self) -> usize {
        self.base.radius().max(1)
    }

    fn prove(&self, h: &Graph) -> Result<Certificates> {
        let g = decode_graph(h)?;
        let base_certs = self.base.prove(&g)?;
        self.certificates_for(&g, &base_certs)
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let g = view.graph();
        let decode = |u: VertexId| view.cert(u).and_then(WrappedCert::decode);
        let Some(mine) = decode(v) else { return false };
        let Some(around) = g.neighbors(v).iter().map(|&u| decode(u)).collect::<Option<Vec<_>>>() else {
            return false;
        };

        if g.degree(v) == 1 {
            return mine.leaf && !around[0].leaf;
        }
        if mine.leaf {
            return false;
        }
        let inner: Vec<&WrappedCert> = around.iter().filter(|c| !c.leaf).collect();
        match around.len() - inner.len() {
            4 => mine.on_path && mine.s.is_empty() && mine.o.is_empty() && inner.len() == 1,
            3 => self.path_vertex_ok(&mine, true, &inner),
            2 => self.path_vertex_ok(&mine, false, &inner),
            1 => {
                let on_path: Vec<&&WrappedCert> = inner.iter().filter(|c| c.on_path).collect();
                if mine.on_path || on_path.len() != 1 || on_path[0].s != mine.s {
                    return false;
                }
                self.simulate(view)
            }
            _ => false,
        }
    }
}

impl<S: Scheme> WrappedUnlabeled<S> {
    /// Runs the labeled verifier on the originals in view: non-leaf vertices
    /// with `b_p = 0`, labeled by `s` and certified by `o`.
    fn simulate(&self, view: &LocalView) -> bool {
        let mut originals = Vec::new();
        for u in view.graph().vertices() {
            let Some(c) = view.cert(u).and_then(WrappedCert::decode) else { return false };
            if !c.leaf && !c.on_path {
                originals.push((u, c));
            }
        }
        let keep: BTreeSet<VertexId> = originals.iter().map(|(u, _)| *u).collect();
        let Ok(g) = view.graph().induced(&keep).with_labels(originals.iter().map(|(u, c)| (*u, c.s.clone()))) else {
            return false;
        };
        let certs: Certificates = originals.into_iter().map(|(u, c)| (u, c.o)).collect();
        let local = LocalView::from_parts(view.center(), view.radius(), g, certs).restrict(self.base.radius());
        self.base.verify(&local)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{check_completeness, run_all, soundness_search_in, SearchConfig};
    use crate::gadget::encode_graph;
    use crate::graph::{cycle, path, random_labels};
    use crate::schemes::KColoring;

    #[test]
    fn cert_codec() {
        let c = WrappedCert { leaf: false, on_path: true, s: "10".parse().unwrap(), o: "1".parse().unwrap() };
        assert_eq!(c.encode().to_string(), "01011101");
        assert_eq!(WrappedCert::decode(&c.encode()), Some(c));
        assert_eq!(WrappedCert::decode(&"10".parse().unwrap()), None);
    }

    #[test]
    fn two_coloring_of_a_labeled_path() {
        let scheme = wrap_unlabeled(KColoring::new(2).unwrap());
        let graphs: Vec<Graph> = (0..6).map(|s| encode_graph(&random_labels(&path(4), 1, s))).collect();
        assert!(check_completeness(&scheme, &graphs).unwrap().is_ok());
    }

    #[test]
    fn flipped_suffix_bit_is_rejected_on_the_gadget_path() {
        let scheme = wrap_unlabeled(KColoring::new(2).unwrap());
        let g = path(2).with_labels([(1, "10".parse().unwrap())]).unwrap();
        let h = encode_graph(&g);
        let certs = scheme.prove(&h).unwrap();
        let p1 = gadgets(&g)[&1].path[0];
        let mut c = WrappedCert::decode(certs.get(p1).unwrap()).unwrap();
        c.s = c.s.flipped(1);
        let mut bad = certs.clone();
        bad.insert(p1, c.encode());
        let verdict = run_all(&scheme, &h, &bad).unwrap();
        assert!(!verdict.accepted);
        assert!(verdict.rejecting.iter().all(|&v| v == 1 || gadgets(&g)[&1].path.contains(&v)));
    }

    #[test]
    fn encoded_triangle_is_not_two_colorable() {
        let scheme = wrap_unlabeled(KColoring::new(2).unwrap());
        let h = encode_graph(&cycle(3));
        // Leaves hold "1"; gadget vertices may hold anything short; hosts try
        // every (b_p, s, o) with |s| <= 1 and |o| <= 1.
        let mut space = std::collections::BTreeMap::new();
        let small: Vec<BitString> = crate::bits::all_strings_up_to(1).collect();
        for v in h.vertices() {
            let options: Vec<BitString> = if h.degree(v) == 1 {
                vec![WrappedCert::leaf().encode()]
            } else {
                let mut out = Vec::new();
                for on_path in [false, true] {
                    for s in &small {
                        for o in &small {
                            out.push(WrappedCert { leaf: false, on_path, s: s.clone(), o: o.clone() }.encode());
                        }
                    }
                }
                out
            };
            space.insert(v, options);
        }
        let out = soundness_search_in(&scheme, &h, &space, &SearchConfig::default()).unwrap();
        assert!(out.is_sound(), "{out:?}");
    }
}
