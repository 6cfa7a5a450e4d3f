use crate::bits::{BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};

/// Certifies that the graph is a tree with `(root id, distance to root)`
/// certificates, both gamma-coded.
///
/// Accepted everywhere implies every edge joins consecutive distances and
/// every non-root vertex has exactly one neighbor one step closer, so the
/// edges are exactly the parent pointers and there are `n - 1` of them.
#[derive(Clone, Debug, Default)]
pub struct TreeDistances;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeCert {
    pub root: VertexId,
    pub dist: usize,
}

impl TreeCert {
    pub fn encode(&self) -> BitString {
        let mut w = BitWriter::new();
        w.write_gamma(self.root);
        w.write_gamma(self.dist);
        w.finish()
    }

    pub fn decode(bits: &BitString) -> Option<TreeCert> {
        let mut r = BitReader::new(bits);
        let root = r.read_gamma()?;
        let dist = r.read_gamma()?;
        r.is_exhausted().then_some(TreeCert { root, dist })
    }
}

/// The distance-labeling rule shared by every tree-shaped scheme here.
/// `mine` is the center's decoded certificate; `theirs` are the neighbors'.
pub(crate) fn distance_rule_holds(center: VertexId, mine: TreeCert, theirs: &[TreeCert]) -> bool {
    if theirs.iter().any(|t| t.root != mine.root || t.dist.abs_diff(mine.dist) != 1) {
        return false;
    }
    if mine.dist == 0 {
        center == mine.root
    } else {
        center != mine.root && theirs.iter().filter(|t| t.dist + 1 == mine.dist).count() == 1
    }
}

impl TreeDistances {
    /// Honest certificates rooted at `root`; fails unless `g` is a tree.
    pub fn prove_rooted(&self, g: &Graph, root: VertexId) -> Result<Certificates> {
        if g.edge_count() + 1 != g.vertex_count() || !g.is_connected() {
            return Err(Error::not_member(self.name(), "graph is not a tree"));
        }
        let dist = g.bfs(root);
        Ok(dist.into_iter().map(|(v, d)| (v, TreeCert { root, dist: d }.encode())).collect())
    }
}

impl Scheme for TreeDistances {
    fn name(&self) -> String {
        "tree-dist".into()
    }

    fn radius(&self) -> usize {
        1
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let root = g.vertices().next().ok_or_else(|| Error::not_member(self.name(), "empty graph"))?;
        self.prove_rooted(g, root)
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let Some(mine) = view.cert(v).and_then(TreeCert::decode) else {
            return false;
        };
        let theirs: Option<Vec<TreeCert>> =
            view.graph().neighbors(v).iter().map(|&u| view.cert(u).and_then(TreeCert::decode)).collect();
        theirs.is_some_and(|t| distance_rule_holds(v, mine, &t))
    }
}
