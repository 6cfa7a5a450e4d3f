use crate::bits::{idbits, BitReader, BitString};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

/// Radius-1 certification of `k`-colorability: the certificate is a color
/// in exactly `ceil(log2 k)` bits.
#[derive(Clone, Debug)]
pub struct KColoring {
    k: usize,
}

impl KColoring {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("k-colorability needs k >= 1".into()));
        }
        Ok(KColoring { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color_bits(&self) -> usize {
        idbits(self.k - 1)
    }

    pub fn encode(&self, color: usize) -> BitString {
        BitString::from_uint(color as u64, self.color_bits())
    }

    pub fn decode(&self, cert: &BitString) -> Option<usize> {
        if cert.len() != self.color_bits() {
            return None;
        }
        let c = BitReader::new(cert).read_uint(self.color_bits())? as usize;
        (c < self.k).then_some(c)
    }

    /// A proper coloring with colors `0..k`, or `None`. Backtracking in BFS
    /// order, smallest color first.
    pub fn find_coloring(&self, g: &Graph) -> Option<Vec<(VertexId, usize)>> {
        let order: Vec<VertexId> = match g.vertices().next() {
            None => return Some(Vec::new()),
            Some(s) => {
                let mut by_dist: Vec<(usize, VertexId)> = g.bfs(s).into_iter().map(|(v, d)| (d, v)).collect();
                by_dist.sort_unstable();
                by_dist.into_iter().map(|(_, v)| v).collect()
            }
        };
        let mut color = std::collections::BTreeMap::new();
        fn go(
            i: usize,
            order: &[VertexId],
            g: &Graph,
            k: usize,
            color: &mut std::collections::BTreeMap<VertexId, usize>,
        ) -> bool {
            let Some(&v) = order.get(i) else { return true };
            for c in 0..k {
                if g.neighbors(v).iter().all(|u| color.get(u) != Some(&c)) {
                    color.insert(v, c);
                    if go(i + 1, order, g, k, color) {
                        return true;
                    }
                    color.remove(&v);
                }
            }
            false
        }
        go(0, &order, g, self.k, &mut color).then(|| color.into_iter().collect())
    }
}

impl Scheme for KColoring {
    fn name(&self) -> String {
        format!("kcolor:{}", self.k)
    }

    fn radius(&self) -> usize {
        1
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let coloring = self
            .find_coloring(g)
            .ok_or_else(|| Error::not_member(self.name(), format!("graph is not {}-colorable", self.k)))?;
        Ok(coloring.into_iter().map(|(v, c)| (v, self.encode(c))).collect())
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let Some(mine) = view.cert(v).and_then(|c| self.decode(c)) else {
            return false;
        };
        view.graph()
            .neighbors(v)
            .iter()
            .all(|&u| view.cert(u).and_then(|c| self.decode(c)).is_some_and(|theirs| theirs != mine))
    }
}
