use std::collections::BTreeMap;

use serde::Serialize;

use super::canonical::{canonical_assignment, canonical_rule};
use super::lift::renumbered;
use crate::bits::{gamma_len, idbits, BitReader, BitString, BitWriter};
use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView, VertexId};
use crate::reduction::reduce;

/// The positions `J - d ..= J + d` as one vertex sees them: label and base
/// certificate of every position that exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub j: usize,
    pub entries: BTreeMap<usize, (BitString, BitString)>,
}

impl Window {
    fn range(&self, d: usize) -> impl Iterator<Item = usize> {
        (self.j as i64 - d as i64..=(self.j + d) as i64).filter(|&p| p >= 0).map(|p| p as usize)
    }

    /// Layout: a `(2d + 1)`-bit presence map for positions `J - d ..= J + d`,
    /// then `gamma(|label|) label gamma(|cert|) cert` per present position,
    /// then `J - 1` in binary without leading zeros.
    pub fn encode(&self, d: usize) -> BitString {
        let mut w = BitWriter::new();
        for k in 0..=2 * d {
            let p = self.j as i64 - d as i64 + k as i64;
            w.write_bit(p >= 1 && self.entries.contains_key(&(p as usize)));
        }
        for (label, cert) in self.entries.values() {
            w.write_string(label);
            w.write_string(cert);
        }
        let rest = (self.j - 1) as u64;
        w.write_uint(rest, idbits(self.j - 1));
        w.finish()
    }

    pub fn decode(bits: &BitString, d: usize) -> Option<Window> {
        let mut r = BitReader::new(bits);
        let mut present = Vec::with_capacity(2 * d + 1);
        for _ in 0..=2 * d {
            present.push(r.read_bit()?);
        }
        let mut fields = Vec::new();
        for _ in present.iter().filter(|&&p| p) {
            fields.push((r.read_string()?, r.read_string()?));
        }
        let rest = r.read_rest();
        if rest.len() > 63 || rest.get(0) == Some(false) {
            return None;
        }
        let j = rest.to_uint().unwrap_or(0) as usize + 1;
        let mut entries = BTreeMap::new();
        let mut fields = fields.into_iter();
        for (k, p) in present.into_iter().enumerate() {
            if p {
                let pos = j as i64 - d as i64 + k as i64;
                if pos < 1 {
                    return None;
                }
                entries.insert(pos as usize, fields.next()?);
            }
        }
        Some(Window { j, entries })
    }
}

/// A radius-`d` path scheme run at radius 1.
pub struct ShavedScheme<S> {
    base: S,
    d: usize,
}

pub fn shave<S: Scheme>(base: S) -> Result<ShavedScheme<S>> {
    let d = base.radius();
    if d == 0 {
        return Err(Error::Input("shave needs a base of radius at least 1".into()));
    }
    Ok(ShavedScheme { base, d })
}

/// Framing on top of `(2d + 1)s + ceil(log2 n)`: the presence map, two
/// length prefixes and the label for each of the `2d + 1` positions.
pub fn shaved_framing(d: usize, s: usize, l: usize) -> usize {
    (2 * d + 1) * (1 + gamma_len(s) + gamma_len(l) + l)
}

pub fn shaved_size_bound(d: usize, n: usize, s: usize, l: usize) -> usize {
    (2 * d + 1) * s + idbits(n.saturating_sub(1)) + shaved_framing(d, s, l)
}

impl<S: Scheme> ShavedScheme<S> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self) -> &S {
        &self.base
    }
}

impl<S: Scheme> Scheme for ShavedScheme<S> {
    fn name(&self) -> String {
        format!("shave({})", self.base.name())
    }

    fn radius(&self) -> usize {
        1
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let j = canonical_assignment(g).ok_or_else(|| Error::not_member(self.name(), "graph is not a path"))?;
        let h = renumbered(g, &j)?;
        let base = self.base.prove(&h)?;
        let n = g.vertex_count();
        Ok(g.vertices()
            .map(|v| {
                let jv = j[&v];
                let lo = jv.saturating_sub(self.d).max(1);
                let hi = (jv + self.d).min(n);
                let entries = (lo..=hi)
                    .map(|p| (p, (h.label(p).cloned().unwrap_or_default(), base.get(p).cloned().unwrap_or_default())))
                    .collect();
                (v, Window { j: jv, entries }.encode(self.d))
            })
            .collect())
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        let g = view.graph();
        let d = self.d;
        let Some(mine) = view.cert(v).and_then(|c| Window::decode(c, d)) else { return false };
        let Some(theirs) = g
            .neighbors(v)
            .iter()
            .map(|&u| view.cert(u).and_then(|c| Window::decode(c, d)).map(|w| (u, w)))
            .collect::<Option<Vec<(VertexId, Window)>>>()
        else {
            return false;
        };
        let js: Vec<usize> = theirs.iter().map(|(_, w)| w.j).collect();
        if !canonical_rule(mine.j, &js) {
            return false;
        }

        let positions: Vec<usize> = mine.entries.keys().copied().collect();
        if !positions.contains(&mine.j) || positions.windows(2).any(|p| p[1] != p[0] + 1) {
            return false;
        }
        for p in [mine.j.checked_sub(1), Some(mine.j + 1)].into_iter().flatten().filter(|&p| p >= 1) {
            if mine.entries.contains_key(&p) != js.contains(&p) {
                return false;
            }
        }
        if mine.entries[&mine.j].0 != *view.label(v).unwrap_or(&BitString::new()) {
            return false;
        }
        for (u, w) in &theirs {
            if mine.entries.get(&w.j).map(|e| &e.0) != view.label(*u) {
                return false;
            }
            let shared = mine.range(d).filter(|p| w.range(d).any(|q| q == *p));
            for p in shared {
                if mine.entries.get(&p) != w.entries.get(&p) {
                    return false;
                }
            }
        }

        let Ok(segment) = Graph::from_parts(
            mine.entries.iter().map(|(&p, (l, _))| (p, l.clone())),
            positions.windows(2).map(|p| (p[0], p[1])),
        ) else {
            return false;
        };
        let certs: Certificates = mine.entries.iter().map(|(&p, (_, c))| (p, c.clone())).collect();
        self.base.verify(&LocalView::from_parts(mine.j, d, segment, certs))
    }
}

/// Identifier fields in a reduced certificate: one origin plus `|D|`
/// neighbors per packet.
pub fn generic_id_fields(codec: &crate::reduction::PacketCodec, cert: &BitString) -> usize {
    codec.decode(cert).iter().map(|p| 1 + p.neighbors.len()).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub shaved_max_bits: usize,
    pub shaved_bound: usize,
    pub shaved_id_fields: usize,
    pub generic_max_bits: usize,
    pub generic_bound: usize,
    pub generic_id_fields: usize,
}

/// Shaving versus generic reduction with `δ = d - 1` on one path.
pub fn compare_with_generic<S: Scheme + Clone>(base: &S, g: &Graph) -> Result<ComparisonRow> {
    let n = g.vertex_count();
    let d = base.radius();
    let shaved = shave(base.clone())?;
    let shaved_certs = shaved.prove(g)?;
    let reduced = reduce(base.clone(), d - 1)?;
    let generic_certs = reduced.prove(g)?;
    let j = canonical_assignment(g).ok_or_else(|| Error::Input("comparison needs a path".into()))?;
    let s = base.prove(&renumbered(g, &j)?)?.size();
    let l = g.max_label_bits();
    Ok(ComparisonRow {
        n,
        shaved_max_bits: shaved_certs.size(),
        shaved_bound: shaved_size_bound(d, n, s, l),
        shaved_id_fields: 1,
        generic_max_bits: generic_certs.size(),
        generic_bound: crate::reduction::size_bound(g.max_degree(), d - 1, n, s, l),
        generic_id_fields: generic_certs.iter().map(|(_, c)| generic_id_fields(&reduced.codec(), c)).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::run_all;
    use crate::graph::path;
    use crate::paths::UniformLabels;

    fn labeled(n: usize, label: &str) -> Graph {
        path(n).with_labels((1..=n).map(|v| (v, label.parse().unwrap()))).unwrap()
    }

    #[test]
    fn window_round_trip() {
        let w = Window {
            j: 2,
            entries: [(1, ("1".parse().unwrap(), BitString::new())), (2, (BitString::new(), "01".parse().unwrap()))]
                .into_iter()
                .collect(),
        };
        let bits = w.encode(1);
        assert_eq!(Window::decode(&bits, 1), Some(w));
        // J = 1 has an empty id field.
        let first = Window { j: 1, entries: [(1, (BitString::new(), BitString::new()))].into_iter().collect() };
        assert_eq!(first.encode(1).to_string(), "01011");
        assert_eq!(Window::decode(&"0101101".parse().unwrap(), 1), None);
    }

    #[test]
    fn uniform_paths_accept_and_deviations_reject_nearby() {
        let shaved = shave(UniformLabels::new(2).unwrap()).unwrap();
        for n in [1, 2, 3, 8, 16] {
            let g = labeled(n, "10");
            let certs = shaved.prove(&g).unwrap();
            assert!(run_all(&shaved, &g, &certs).unwrap().accepted, "n = {n}");
            assert!(certs.size() <= shaved_size_bound(2, n, 0, 2));
        }
        let g = labeled(8, "10");
        let certs = shaved.prove(&g).unwrap();
        for bad in 1..=8 {
            let h = g.clone().with_labels([(bad, "11".parse().unwrap())]).unwrap();
            let verdict = run_all(&shaved, &h, &certs).unwrap();
            assert!(!verdict.accepted);
            assert!(verdict.rejecting.iter().all(|&v| v.abs_diff(bad) <= 3));
        }
    }

    #[test]
    fn generic_reduction_carries_more_identifiers() {
        let base = UniformLabels::new(2).unwrap();
        for n in [16, 64] {
            let row = compare_with_generic(&base, &labeled(n, "1")).unwrap();
            assert!(row.shaved_max_bits <= row.shaved_bound);
            assert!(row.generic_max_bits <= row.generic_bound);
            assert!(row.generic_id_fields >= 5);
            assert!(row.shaved_max_bits < row.generic_max_bits);
        }
    }
}
