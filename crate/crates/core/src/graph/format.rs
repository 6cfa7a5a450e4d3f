//! Graph and certificate file formats.
//!
//! Structured form (JSON):
//!
//! ```json
//! {"n": 3, "edges": [[1, 2], [2, 3]], "labels": {"1": {"hex": "80", "bits": 1}}}
//! ```
//!
//! Text form: a header line `n m`, then `m` lines `u v`, then `n` lines
//! `id bitlen hex`. An empty bit string is written with hex `-`. Blank lines
//! and lines starting with `#` are skipped.
//!
//! Certificate files reuse the label block: a JSON map from identifier to
//! `{hex, bits}`, or a text header `n` followed by `n` lines `id bitlen hex`.
//! Hex digits pack bits most-significant first, so the bit length is always
//! explicit and `0` bits differs from `8` zero bits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::bits::BitString;
use crate::certify::Certificates;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDoc {
    pub hex: String,
    pub bits: usize,
}

impl From<&BitString> for LabelDoc {
    fn from(b: &BitString) -> Self {
        LabelDoc { hex: b.to_hex(), bits: b.len() }
    }
}

impl TryFrom<&LabelDoc> for BitString {
    type Error = Error;

    fn try_from(doc: &LabelDoc) -> Result<Self> {
        BitString::from_hex(&doc.hex, doc.bits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub labels: BTreeMap<VertexId, LabelDoc>,
}

pub type CertsDoc = BTreeMap<VertexId, LabelDoc>;

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|(v, l)| (v, LabelDoc::from(l))).collect(),
        }
    }
}

impl TryFrom<&GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: &GraphDoc) -> Result<Self> {
        for &[u, v] in &doc.edges {
            if u >= v {
                return Err(Error::Parse(format!("edge [{u}, {v}] must be listed with u < v")));
            }
        }
        let labels = doc.labels.iter().map(|(&v, l)| Ok((v, BitString::try_from(l)?))).collect::<Result<Vec<_>>>()?;
        Graph::new(doc.n, doc.edges.iter().map(|&[u, v]| (u, v)), labels)
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from(g)).expect("graph documents always serialize")
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(s)?;
    Graph::try_from(&doc)
}

fn hex_field(b: &BitString) -> String {
    if b.is_empty() {
        "-".to_string()
    } else {
        b.to_hex()
    }
}

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("line {line}: missing {what}")))?
        .parse()
        .map_err(|e| Error::Parse(format!("line {line}: bad {what}: {e}")))
}

fn parse_bits_line(line_no: usize, line: &str) -> Result<(VertexId, BitString)> {
    let mut toks = line.split_whitespace();
    let id = parse_num(toks.next(), line_no, "vertex id")?;
    let bits = parse_num(toks.next(), line_no, "bit length")?;
    let hex = match toks.next() {
        None | Some("-") => "",
        Some(h) => h,
    };
    if toks.next().is_some() {
        return Err(Error::Parse(format!("line {line_no}: trailing tokens")));
    }
    let value = BitString::from_hex(hex, bits).map_err(|e| Error::Parse(format!("line {line_no}: {e}")))?;
    Ok((id, value))
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for (v, l) in g.labels() {
        out.push_str(&format!("{v} {} {}\n", l.len(), hex_field(l)));
    }
    out
}

pub fn graph_from_text(s: &str) -> Result<Graph> {
    let mut lines = content_lines(s);
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let mut toks = header.split_whitespace();
    let n = parse_num(toks.next(), hline, "vertex count")?;
    let m = parse_num(toks.next(), hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
        let mut t = line.split_whitespace();
        let u = parse_num(t.next(), ln, "edge endpoint")?;
        let v = parse_num(t.next(), ln, "edge endpoint")?;
        if t.next().is_some() {
            return Err(Error::Parse(format!("line {ln}: trailing tokens")));
        }
        edges.push((u, v));
    }
    let mut labels = BTreeMap::new();
    for _ in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| Error::Parse(format!("expected {n} label lines")))?;
        let (id, bits) = parse_bits_line(ln, line)?;
        if labels.insert(id, bits).is_some() {
            return Err(Error::Parse(format!("line {ln}: duplicate label for vertex {id}")));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse(format!("line {ln}: unexpected content after label block")));
    }
    Graph::new(n, edges, labels)
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn parse_graph(s: &str) -> Result<Graph> {
    if s.trim_start().starts_with('{') {
        graph_from_json(s)
    } else {
        graph_from_text(s)
    }
}

pub fn certs_to_json(certs: &Certificates) -> String {
    let doc: CertsDoc = certs.iter().map(|(v, c)| (v, LabelDoc::from(c))).collect();
    serde_json::to_string_pretty(&doc).expect("certificate documents always serialize")
}

pub fn certs_from_json(s: &str) -> Result<Certificates> {
    let doc: CertsDoc = serde_json::from_str(s)?;
    doc.iter().map(|(&v, l)| Ok((v, BitString::try_from(l)?))).collect()
}

pub fn certs_to_text(certs: &Certificates) -> String {
    let mut out = format!("{}\n", certs.len());
    for (v, c) in certs.iter() {
        out.push_str(&format!("{v} {} {}\n", c.len(), hex_field(c)));
    }
    out
}

pub fn certs_from_text(s: &str) -> Result<Certificates> {
    let mut lines = content_lines(s);
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("empty certificate file".into()))?;
    let n = parse_num(Some(header), hline, "certificate count")?;
    let mut certs = Certificates::default();
    for _ in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| Error::Parse(format!("expected {n} certificate lines")))?;
        let (id, bits) = parse_bits_line(ln, line)?;
        if certs.insert(id, bits).is_some() {
            return Err(Error::Parse(format!("line {ln}: duplicate certificate for vertex {id}")));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse(format!("line {ln}: unexpected content after certificates")));
    }
    Ok(certs)
}

pub fn parse_certs(s: &str) -> Result<Certificates> {
    if s.trim_start().starts_with('{') {
        certs_from_json(s)
    } else {
        certs_from_text(s)
    }
}
