//! JSON network documents and placement reports.
//!
//! ```json
//! {
//!   "version": 1,
//!   "state_nodes": [1, 2, 3],
//!   "state_edges": [[1, 2], [2, 3]],
//!   "inputs": [{"id": "u1", "target": 1}],
//!   "decomposition": [{"nodes": [1, 2, 3], "kind": "path"}]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::composer::{InputPlacement, StageType};
use crate::graph::{build_network, GraphError, StructuredNetwork};
use crate::pactus::{ComponentSeed, PactusDecomposition};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("input id {0:?} must look like u1, u2, ...")]
    InputId(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub id: String,
    pub target: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub version: u32,
    pub state_nodes: Vec<u32>,
    pub state_edges: Vec<[u32; 2]>,
    #[serde(default)]
    pub inputs: Vec<InputSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<ComponentSeed>>,
}

fn input_label(id: &str) -> Result<u32, DocumentError> {
    id.strip_prefix('u')
        .filter(|rest| !rest.starts_with('+'))
        .and_then(|rest| rest.parse::<u32>().ok())
        .filter(|&k| k > 0)
        .ok_or_else(|| DocumentError::InputId(id.to_string()))
}

pub fn parse_document(text: &str) -> Result<NetworkDocument, DocumentError> {
    let doc: NetworkDocument = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(DocumentError::Version(doc.version));
    }
    Ok(doc)
}

pub fn serialize_document(doc: &NetworkDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

impl NetworkDocument {
    pub fn to_network(&self) -> Result<StructuredNetwork, DocumentError> {
        let edges: Vec<(u32, u32)> = self.state_edges.iter().map(|e| (e[0], e[1])).collect();
        let mut inputs = Vec::with_capacity(self.inputs.len());
        for spec in &self.inputs {
            inputs.push((input_label(&spec.id)?, spec.target));
        }
        Ok(build_network(&self.state_nodes, &edges, &inputs)?)
    }

    /// Canonical document for a network: sorted nodes, sorted edges with the
    /// smaller label first, inputs in label order.
    pub fn from_network(
        net: &StructuredNetwork,
        decomposition: Option<Vec<ComponentSeed>>,
    ) -> Self {
        NetworkDocument {
            version: FORMAT_VERSION,
            state_nodes: net.labels().to_vec(),
            state_edges: net
                .edges()
                .iter()
                .map(|&(a, b)| [net.label(a), net.label(b)])
                .collect(),
            inputs: net
                .inputs()
                .iter()
                .map(|a| InputSpec {
                    id: format!("u{}", a.input),
                    target: net.label(a.target),
                })
                .collect(),
            decomposition,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    /// 1-based component number.
    pub component: usize,
    pub graph_type: StageType,
    pub component_inputs: Vec<u32>,
    pub externals_added: Vec<u32>,
    pub stage_ssc_nodes: Vec<u32>,
    pub cumulative_ssc_nodes: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementReport {
    pub external_inputs: Vec<InputSpec>,
    pub count: usize,
    pub decomposition: Vec<ComponentSeed>,
    pub stages: Vec<StageReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_ssc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
}

impl PlacementReport {
    pub fn new(
        net: &StructuredNetwork,
        dec: &PactusDecomposition,
        placement: &InputPlacement,
    ) -> Self {
        PlacementReport {
            external_inputs: placement
                .external
                .iter()
                .map(|&(u, t)| InputSpec {
                    id: format!("u{u}"),
                    target: t,
                })
                .collect(),
            count: placement.len(),
            decomposition: dec.seeds(net),
            stages: placement
                .per_stage
                .iter()
                .map(|s| StageReport {
                    component: s.component + 1,
                    graph_type: s.graph_type,
                    component_inputs: s.component_inputs.clone(),
                    externals_added: s.externals_added.clone(),
                    stage_ssc_nodes: s.stage_ssc_nodes.clone(),
                    cumulative_ssc_nodes: s.cumulative_ssc_nodes.clone(),
                })
                .collect(),
            verified_ssc: None,
            minimal: None,
        }
    }
}
