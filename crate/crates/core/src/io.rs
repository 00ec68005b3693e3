//! JSON interchange format for instances.
//!
//! ```json
//! { "vertices": ["u", "v"],
//!   "edges": [ { "id": 0, "endpoints": [ {"v": "u", "p": 1.0, "c": 0.0},
//!                                        {"v": "v", "p": 1.0, "c": 1.0} ] } ],
//!   "meta": { "generator": "...", "params": { ... } } }
//! ```
//! Single-endpoint edges are self-loops. `meta` and the per-edge `class`
//! (`"heavy"` / `"light"`) are optional.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{validate, Edge, EdgeClass, EdgeId, Endpoint, Instance, Meta, VertexId, Violation};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndpointJson {
    v: String,
    p: f64,
    c: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    id: usize,
    endpoints: Vec<EndpointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class: Option<EdgeClass>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge {edge} references unknown vertex {name:?}")]
    UnknownVertex { edge: usize, name: String },
    #[error("edge id {0} appears more than once")]
    DuplicateEdgeId(usize),
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let raw: InstanceJson = serde_json::from_str(text)?;
    let index: HashMap<&str, VertexId> =
        raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), VertexId(i))).collect();
    let mut ids = HashSet::new();
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        if !ids.insert(e.id) {
            return Err(ParseError::DuplicateEdgeId(e.id));
        }
        let endpoints = e
            .endpoints
            .iter()
            .map(|ep| {
                let vertex = *index
                    .get(ep.v.as_str())
                    .ok_or_else(|| ParseError::UnknownVertex { edge: e.id, name: ep.v.clone() })?;
                Ok(Endpoint { vertex, p: ep.p, c: ep.c })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        edges.push(Edge { id: EdgeId(e.id), endpoints, class: e.class });
    }
    edges.sort_by_key(|e| e.id);
    let inst = Instance { vertices: raw.vertices, edges, meta: raw.meta };
    let violations = validate(&inst);
    if violations.is_empty() {
        Ok(inst)
    } else {
        Err(ParseError::Invalid(violations))
    }
}

fn to_json(inst: &Instance) -> InstanceJson {
    InstanceJson {
        vertices: inst.vertices.clone(),
        edges: inst
            .edges
            .iter()
            .map(|e| EdgeJson {
                id: e.id.0,
                endpoints: e
                    .endpoints
                    .iter()
                    .map(|ep| EndpointJson { v: inst.vertices[ep.vertex.0].clone(), p: ep.p, c: ep.c })
                    .collect(),
                class: e.class,
            })
            .collect(),
        meta: inst.meta.clone(),
    }
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string(&to_json(inst)).expect("instance serializes")
}

pub fn serialize_instance_pretty(inst: &Instance) -> String {
    serde_json::to_string_pretty(&to_json(inst)).expect("instance serializes")
}
