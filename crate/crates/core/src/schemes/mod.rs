//! Concrete schemes and the name registry used by the command line.

mod kcolor;
pub mod pdelta;
mod tree;

use std::sync::Arc;

use serde::Serialize;

use crate::certify::{AcceptAll, RejectAll, SchemeRef, Widened};
use crate::error::{Error, Result};

pub use kcolor::KColoring;
pub use pdelta::{pdelta_membership, PDeltaCert, PDeltaInstance, PDeltaScheme};
pub use tree::{TreeCert, TreeDistances};

/// One registry entry as listed by `localcert schemes`.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeInfo {
    pub pattern: &'static str,
    pub radius: &'static str,
    pub size: &'static str,
    pub summary: &'static str,
}

pub fn registry() -> Vec<SchemeInfo> {
    vec![
        SchemeInfo { pattern: "kcolor:K", radius: "1", size: "ceil(log2 K)", summary: "proper K-coloring" },
        SchemeInfo {
            pattern: "tree-dist",
            radius: "1",
            size: "2 gamma(n)",
            summary: "the graph is a tree (root id and distance)",
        },
        SchemeInfo {
            pattern: "pdelta:D:R[:capC]",
            radius: "R",
            size: "(D-1)^(depth-R) + 3 gamma(n)",
            summary: "membership in P_D; capC keeps C payload bits and is unsound",
        },
        SchemeInfo {
            pattern: "uniform:D",
            radius: "D",
            size: "0",
            summary: "paths whose labels are all equal (path fixture)",
        },
        SchemeInfo {
            pattern: "even-n",
            radius: "1",
            size: "0",
            summary: "paths with canonical ids and an even number of vertices (path fixture)",
        },
        SchemeInfo { pattern: "accept-all[:R]", radius: "R (default 1)", size: "0", summary: "every graph" },
        SchemeInfo { pattern: "reject-all[:R]", radius: "R (default 1)", size: "0", summary: "no graph" },
        SchemeInfo {
            pattern: "wrapped:NAME",
            radius: "max(1, radius of NAME)",
            size: "2 + gamma(l) + l + size of NAME",
            summary: "NAME run on the gadget encoding g(G) of a labeled graph",
        },
        SchemeInfo { pattern: "NAME@R", radius: "R", size: "as NAME", summary: "NAME declared at a larger radius" },
    ]
}

fn int(part: Option<&str>, name: &str) -> Result<usize> {
    part.ok_or_else(|| Error::Input(format!("scheme {name:?} is missing a parameter")))?
        .parse()
        .map_err(|_| Error::Input(format!("scheme {name:?} has a non-numeric parameter")))
}

/// Resolves a registry name such as `kcolor:3`, `pdelta:3:2:cap1` or
/// `tree-dist@3`.
pub fn scheme_by_name(name: &str) -> Result<SchemeRef> {
    if let Some(inner) = name.strip_prefix("wrapped:") {
        return Ok(Arc::new(crate::gadget::wrap_unlabeled(scheme_by_name(inner)?)));
    }
    if let Some((inner, r)) = name.rsplit_once('@') {
        let r = int(Some(r), name)?;
        return Ok(Arc::new(Widened::new(scheme_by_name(inner)?, r)?));
    }
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let scheme: SchemeRef = match head {
        "kcolor" => Arc::new(KColoring::new(int(parts.next(), name)?)?),
        "tree-dist" => Arc::new(TreeDistances),
        "pdelta" => {
            let delta = int(parts.next(), name)?;
            let r = int(parts.next(), name)?;
            let cap = match parts.next() {
                None => None,
                Some(c) => Some(int(c.strip_prefix("cap"), name)?),
            };
            Arc::new(PDeltaScheme::with_cap(delta, r, cap)?)
        }
        "uniform" => Arc::new(crate::paths::UniformLabels::new(int(parts.next(), name)?)?),
        "even-n" => Arc::new(crate::paths::EvenLength),
        "accept-all" => Arc::new(AcceptAll { radius: parts.next().map_or(Ok(1), |p| int(Some(p), name))? }),
        "reject-all" => Arc::new(RejectAll { radius: parts.next().map_or(Ok(1), |p| int(Some(p), name))? }),
        _ => return Err(Error::Input(format!("unknown scheme {name:?}; see `localcert schemes`"))),
    };
    if parts.next().is_some() {
        return Err(Error::Input(format!("scheme {name:?} has too many parameters")));
    }
    Ok(scheme)
}
