//! Instances, orientations and their evaluation.
//!
//! An [`Instance`] is a multi-hypergraph: every edge lists its endpoints
//! together with the processing time and the orientation cost incurred when
//! the edge is oriented toward that endpoint. Arity-1 edges are self-loops
//! whose orientation is forced; they carry fixed "load values".

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index into [`Instance::vertices`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Edge identifier. Edges of an [`Instance`] are stored in ascending id order
/// and every tie-break downstream follows that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Optional job classification used by the unrelated variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Heavy,
    Light,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub vertex: VertexId,
    /// Processing time when the edge is oriented toward `vertex`.
    pub p: f64,
    /// Orientation cost when the edge is oriented toward `vertex`.
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub endpoints: Vec<Endpoint>,
    pub class: Option<EdgeClass>,
}

impl Edge {
    pub fn arity(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_self_loop(&self) -> bool {
        self.endpoints.len() == 1
    }

    /// True when every endpoint carries the same processing time.
    pub fn is_related(&self) -> bool {
        match self.endpoints.first() {
            Some(first) => self.endpoints.iter().all(|ep| ep.p == first.p),
            None => true,
        }
    }

    pub fn endpoint_index(&self, v: VertexId) -> Option<usize> {
        self.endpoints.iter().position(|ep| ep.vertex == v)
    }

    pub fn max_weight(&self) -> f64 {
        self.endpoints.iter().map(|ep| ep.p).fold(0.0, f64::max)
    }

    pub fn min_weight(&self) -> f64 {
        self.endpoints
            .iter()
            .map(|ep| ep.p)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Free-form generator metadata carried alongside an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub generator: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Instance {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub meta: Option<Meta>,
}

/// A single invariant violation reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("edge {edge} references unknown vertex index {vertex}")]
    UnknownVertex { edge: EdgeId, vertex: usize },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    DuplicateEndpoint { edge: EdgeId, vertex: usize },
    #[error("edge {edge} has no endpoints")]
    EmptyEdge { edge: EdgeId },
    #[error("edge {edge} has a negative or non-finite processing time {value}")]
    BadProcessingTime { edge: EdgeId, value: f64 },
    #[error("edge {edge} has a negative or non-finite orientation cost {value}")]
    BadCost { edge: EdgeId, value: f64 },
    #[error("edge id {edge} is used more than once")]
    DuplicateEdgeId { edge: EdgeId },
    #[error("edges are not stored in ascending id order at {edge}")]
    UnsortedEdges { edge: EdgeId },
    #[error("vertex name {name:?} is used more than once")]
    DuplicateVertexName { name: String },
}

/// Returns every invariant violation of `instance`; an empty list means valid.
pub fn validate(instance: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for name in &instance.vertices {
        if !names.insert(name.as_str()) {
            out.push(Violation::DuplicateVertexName { name: name.clone() });
        }
    }
    let n = instance.vertices.len();
    let mut ids = HashSet::new();
    let mut prev: Option<EdgeId> = None;
    for edge in &instance.edges {
        if !ids.insert(edge.id) {
            out.push(Violation::DuplicateEdgeId { edge: edge.id });
        } else if prev.is_some_and(|p| p > edge.id) {
            out.push(Violation::UnsortedEdges { edge: edge.id });
        }
        prev = Some(edge.id);
        if edge.endpoints.is_empty() {
            out.push(Violation::EmptyEdge { edge: edge.id });
        }
        let mut seen = HashSet::new();
        for ep in &edge.endpoints {
            if ep.vertex.0 >= n {
                out.push(Violation::UnknownVertex { edge: edge.id, vertex: ep.vertex.0 });
            }
            if !seen.insert(ep.vertex) {
                out.push(Violation::DuplicateEndpoint { edge: edge.id, vertex: ep.vertex.0 });
            }
            if !(ep.p.is_finite() && ep.p >= 0.0) {
                out.push(Violation::BadProcessingTime { edge: edge.id, value: ep.p });
            }
            if !(ep.c.is_finite() && ep.c >= 0.0) {
                out.push(Violation::BadCost { edge: edge.id, value: ep.c });
            }
        }
    }
    out
}

impl Instance {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    /// Position of the edge with the given id.
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    /// `δ(u)`: indices of edges incident to each vertex, in ascending id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, edge) in self.edges.iter().enumerate() {
            for ep in &edge.endpoints {
                inc[ep.vertex.0].push(i);
            }
        }
        inc
    }

    /// Sum of self-loop weights per vertex.
    pub fn self_loop_loads(&self) -> Vec<f64> {
        let mut loads = vec![0.0; self.vertices.len()];
        for edge in self.edges.iter().filter(|e| e.is_self_loop()) {
            loads[edge.endpoints[0].vertex.0] += edge.endpoints[0].p;
        }
        loads
    }

    /// Multiplies every processing time by `factor`.
    pub fn scaled_weights(&self, factor: f64) -> Instance {
        let mut out = self.clone();
        for edge in &mut out.edges {
            for ep in &mut edge.endpoints {
                ep.p *= factor;
            }
        }
        out
    }
}

/// Incremental construction with dense edge ids in insertion order.
#[derive(Debug, Default)]
pub struct InstanceBuilder {
    vertices: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    meta: Option<Meta>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds (or looks up) a vertex by name.
    pub fn vertex(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        if let Some(&v) = self.index.get(&name) {
            return v;
        }
        let v = VertexId(self.vertices.len());
        self.vertices.push(name.clone());
        self.index.insert(name, v);
        v
    }

    pub fn edge(&mut self, endpoints: Vec<Endpoint>, class: Option<EdgeClass>) -> EdgeId {
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { id, endpoints, class });
        id
    }

    /// A related edge: the same processing time `p` toward every endpoint.
    pub fn related_edge(&mut self, vs: &[(VertexId, f64)], p: f64) -> EdgeId {
        let endpoints = vs.iter().map(|&(vertex, c)| Endpoint { vertex, p, c }).collect();
        self.edge(endpoints, None)
    }

    pub fn self_loop(&mut self, v: VertexId, p: f64) -> EdgeId {
        self.edge(vec![Endpoint { vertex: v, p, c: 0.0 }], None)
    }

    /// Splits a load value into `count` loops; the last one absorbs the
    /// rounding remainder so the total is preserved.
    pub fn split_load(&mut self, v: VertexId, total: f64, count: usize) {
        if count == 0 {
            return;
        }
        let piece = total / count as f64;
        for _ in 0..count - 1 {
            self.self_loop(v, piece);
        }
        self.self_loop(v, total - piece * (count - 1) as f64);
    }

    pub fn meta(&mut self, meta: Meta) {
        self.meta = Some(meta);
    }

    pub fn build(self) -> Instance {
        Instance { vertices: self.vertices, edges: self.edges, meta: self.meta }
    }
}

/// Total map from edges (by position) to the chosen endpoint vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub assignment: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("orientation covers {got} edges but the instance has {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("edge {edge} is oriented toward vertex {vertex}, which is not one of its endpoints")]
    ForeignEndpoint { edge: EdgeId, vertex: usize },
    #[error("target makespan must be positive and finite, got {0}")]
    BadTarget(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub loads: Vec<f64>,
    pub makespan: f64,
    pub total_cost: f64,
}

pub fn evaluate(instance: &Instance, orientation: &Orientation) -> Result<Evaluation, ModelError> {
    if orientation.assignment.len() != instance.edges.len() {
        return Err(ModelError::WrongLength {
            expected: instance.edges.len(),
            got: orientation.assignment.len(),
        });
    }
    let mut loads = vec![0.0; instance.vertices.len()];
    let mut total_cost = 0.0;
    for (edge, &to) in instance.edges.iter().zip(&orientation.assignment) {
        let ep = edge
            .endpoints
            .iter()
            .find(|ep| ep.vertex == to)
            .ok_or(ModelError::ForeignEndpoint { edge: edge.id, vertex: to.0 })?;
        loads[to.0] += ep.p;
        total_cost += ep.c;
    }
    let makespan = loads.iter().copied().fold(0.0, f64::max);
    Ok(Evaluation { loads, makespan, total_cost })
}

/// An instance whose processing times were divided by a target makespan.
///
/// Endpoints whose scaled time exceeds 1 are forbidden: the relaxation gets
/// no variable for them and no rounding step may orient toward them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledInstance {
    pub instance: Instance,
    pub target: f64,
    pub allowed: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error("edge {0} exceeds the target on every endpoint: no orientation with makespan at most the target exists")]
    Infeasible(EdgeId),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub fn scale_to_target(instance: &Instance, target: f64) -> Result<ScaledInstance, ScaleError> {
    if !(target.is_finite() && target > 0.0) {
        return Err(ModelError::BadTarget(target).into());
    }
    let mut scaled = instance.clone();
    let mut allowed = Vec::with_capacity(instance.edges.len());
    for edge in &mut scaled.edges {
        // Relative slack absorbs rounding in targets computed as sums of weights.
        let mask: Vec<bool> = edge.endpoints.iter().map(|ep| ep.p <= target * (1.0 + 1e-12)).collect();
        if !mask.iter().any(|&a| a) {
            return Err(ScaleError::Infeasible(edge.id));
        }
        for ep in &mut edge.endpoints {
            ep.p /= target;
        }
        allowed.push(mask);
    }
    Ok(ScaledInstance { instance: scaled, target, allowed })
}

impl ScaledInstance {
    pub fn edges(&self) -> &[Edge] {
        &self.instance.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.instance.vertices.len()
    }

    pub fn is_allowed(&self, edge: usize, endpoint: usize) -> bool {
        self.allowed[edge][endpoint]
    }

    /// Indices of the allowed endpoints of an edge.
    pub fn allowed_endpoints(&self, edge: usize) -> impl Iterator<Item = usize> + '_ {
        self.allowed[edge]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i)
    }
}
