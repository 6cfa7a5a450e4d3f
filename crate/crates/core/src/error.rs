use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A prover was called on a graph outside the property it certifies.
    #[error("prover for {scheme} called on a non-member: {reason}")]
    NotMember { scheme: String, reason: String },

    /// A gadget-encoded graph could not be decoded back to a labeled graph.
    #[error("gadget decode failed at vertex {vertex}: {reason}")]
    Decode { vertex: VertexId, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn not_member(scheme: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::NotMember { scheme: scheme.into(), reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
