//! The structured record every command emits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certify::{Certificates, Scheme, SizeStats};
use crate::graph::Graph;

/// Exit statuses shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Accepted, sound, or a plain successful transform.
    Ok,
    /// Rejected, or the scheme was fooled.
    Rejected,
    /// Error or exhausted budget.
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Rejected => 1,
            Outcome::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub max_label_bits: usize,
}

impl From<&Graph> for GraphStats {
    fn from(g: &Graph) -> Self {
        GraphStats {
            n: g.vertex_count(),
            edges: g.edge_count(),
            max_degree: g.max_degree(),
            max_label_bits: g.max_label_bits(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeStats {
    pub name: String,
    pub radius: usize,
}

impl SchemeStats {
    pub fn of(s: &dyn Scheme) -> Self {
        SchemeStats { name: s.name(), radius: s.radius() }
    }
}

/// One run. Everything but `wall_time_ms` is a function of the command line
/// and the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<SizeStats>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, usize>,
    pub details: serde_json::Value,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        RunReport {
            command,
            seed,
            outcome: Outcome::Ok,
            graph: None,
            scheme: None,
            verdict: None,
            sizes: None,
            bounds: BTreeMap::new(),
            details: serde_json::Value::Null,
            wall_time_ms: 0,
        }
    }

    pub fn with_graph(mut self, g: &Graph) -> Self {
        self.graph = Some(g.into());
        self
    }

    pub fn with_scheme(mut self, s: &dyn Scheme) -> Self {
        self.scheme = Some(SchemeStats::of(s));
        self
    }

    pub fn with_certs(mut self, c: &Certificates) -> Self {
        self.sizes = Some(c.size_stats());
        self
    }

    pub fn verdict(mut self, outcome: Outcome, verdict: impl Into<String>) -> Self {
        self.outcome = outcome;
        self.verdict = Some(verdict.into());
        self
    }

    pub fn bound(mut self, name: &str, value: usize) -> Self {
        self.bounds.insert(name.to_string(), value);
        self
    }

    pub fn details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).expect("details serialize");
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with the timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        RunReport { wall_time_ms: 0, ..self.clone() }
    }
}
