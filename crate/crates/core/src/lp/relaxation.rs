//! Construction of the Edge/Load/Star relaxation and its Set-strengthened form.

use std::fmt::Write as _;

use crate::model::{EdgeId, Orientation, ScaledInstance, VertexId};

use super::simplex::Sense;
use super::LpError;

/// Upper limit on enumerated Set rows before construction is refused.
pub const MAX_SET_ROWS: usize = 1_000_000;
/// Margin on the big-edge and overfull-set tests, so float noise in scaled
/// weights never produces a row that cuts off an integral orientation.
pub const SIZE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelaxationSpec {
    /// 0 disables Set rows; `k ≥ 2` adds them for subsets of size ≤ k.
    pub k: usize,
    /// Use `p(e,u)` in Star/Set rows instead of the edge's largest weight.
    pub use_per_endpoint_weights: bool,
}

impl RelaxationSpec {
    pub fn plain() -> Self {
        Self { k: 0, use_per_endpoint_weights: true }
    }

    pub fn with_sets(k: usize) -> Self {
        Self { k, use_per_endpoint_weights: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowKind {
    Edge(EdgeId),
    Load(VertexId),
    Star(VertexId),
    Set(VertexId, Vec<EdgeId>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub kind: RowKind,
    pub sense: Sense,
    pub rhs: f64,
    /// `(variable index, coefficient)` pairs.
    pub terms: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Variable {
    /// Edge position in the instance.
    pub edge: usize,
    /// Endpoint position within the edge.
    pub endpoint: usize,
    pub edge_id: EdgeId,
    pub vertex: VertexId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub variables: Vec<Variable>,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    /// `var_of[edge][endpoint]`; `None` for forbidden endpoints.
    pub var_of: Vec<Vec<Option<usize>>>,
    vertex_names: Vec<String>,
}

impl LinearProgram {
    pub fn count_rows(&self, pred: impl Fn(&RowKind) -> bool) -> usize {
        self.rows.iter().filter(|r| pred(&r.kind)).count()
    }

    /// Largest violation of any row by the per-variable assignment `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let mut worst = values.iter().fold(0.0f64, |w, &v| w.max(-v).max(v - 1.0));
        for row in &self.rows {
            let lhs: f64 = row.terms.iter().map(|&(j, a)| a * values[j]).sum();
            let r = lhs - row.rhs;
            worst = worst.max(match row.sense {
                Sense::Le => r,
                Sense::Eq => r.abs(),
            });
        }
        worst
    }

    /// Flattens a per-(edge, endpoint) table into per-variable values.
    pub fn flatten(&self, x: &[Vec<f64>]) -> Vec<f64> {
        self.variables.iter().map(|v| x[v.edge][v.endpoint]).collect()
    }

    /// 0/1 vector of an orientation; `None` if it uses a forbidden endpoint.
    pub fn indicator(&self, orientation: &Orientation) -> Option<Vec<f64>> {
        let mut values = vec![0.0; self.variables.len()];
        for (e, &to) in orientation.assignment.iter().enumerate() {
            let var = self.variables.iter().position(|v| v.edge == e && v.vertex == to)?;
            values[var] = 1.0;
        }
        Some(values)
    }

    /// Line-oriented listing, one constraint per line. For debugging only.
    pub fn dump(&self) -> String {
        let name = |j: usize| {
            let v = &self.variables[j];
            format!("x[{},{}]", v.edge_id, self.vertex_names[v.vertex.0])
        };
        let mut out = String::new();
        let obj: Vec<String> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(j, c)| format!("{c}*{}", name(j)))
            .collect();
        let _ = writeln!(out, "MIN : {}", if obj.is_empty() { "0".into() } else { obj.join(" + ") });
        for row in &self.rows {
            let sense = match row.sense {
                Sense::Le => "<=",
                Sense::Eq => "=",
            };
            let label = match &row.kind {
                RowKind::Edge(e) => format!("EDGE {e}"),
                RowKind::Load(u) => format!("LOAD {}", self.vertex_names[u.0]),
                RowKind::Star(u) => format!("STAR {}", self.vertex_names[u.0]),
                RowKind::Set(u, s) => {
                    let ids: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                    format!("SET {} {{{}}}", self.vertex_names[u.0], ids.join(","))
                }
            };
            let terms: Vec<String> = row.terms.iter().map(|&(j, a)| format!("{a}*{}", name(j))).collect();
            let _ = writeln!(out, "{label} {sense} {} : {}", row.rhs, terms.join(" + "));
        }
        out
    }
}

fn star_weight(inst: &ScaledInstance, spec: &RelaxationSpec, e: usize, i: usize) -> f64 {
    let edge = &inst.instance.edges[e];
    if spec.use_per_endpoint_weights {
        edge.endpoints[i].p
    } else {
        edge.max_weight()
    }
}

/// Allowed incidences of `u` as `(edge position, endpoint position)` in id order.
fn incident(inst: &ScaledInstance, u: VertexId) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (e, edge) in inst.instance.edges.iter().enumerate() {
        if let Some(i) = edge.endpoint_index(u) {
            if inst.allowed[e][i] {
                out.push((e, i));
            }
        }
    }
    out
}

/// All subsets `S` of `u`'s allowed incident edges with `2 ≤ |S| ≤ k` and
/// total weight at `u` above 1, in lexicographic order of edge ids.
pub fn enumerate_violating_sets(inst: &ScaledInstance, u: VertexId, k: usize) -> Vec<Vec<EdgeId>> {
    let inc = incident(inst, u);
    let weights: Vec<f64> = inc.iter().map(|&(e, i)| inst.instance.edges[e].endpoints[i].p).collect();
    let mut out = Vec::new();
    violating_subsets(&weights, k, usize::MAX, &mut |s| {
        out.push(s.iter().map(|&j| inst.instance.edges[inc[j].0].id).collect());
    });
    out
}

/// Depth-first enumeration with suffix-maximum pruning. Returns the number of
/// subsets reported, stopping early once `limit` is exceeded.
fn violating_subsets(weights: &[f64], k: usize, limit: usize, emit: &mut dyn FnMut(&[usize])) -> usize {
    if k < 2 {
        return 0;
    }
    let n = weights.len();
    // top[i]: the k largest weights among positions ≥ i, descending.
    let mut top: Vec<Vec<f64>> = vec![Vec::new(); n + 1];
    for i in (0..n).rev() {
        let mut t = top[i + 1].clone();
        let pos = t.iter().position(|&w| w < weights[i]).unwrap_or(t.len());
        t.insert(pos, weights[i]);
        t.truncate(k);
        top[i] = t;
    }
    let best_extra = |from: usize, r: usize| -> f64 { top[from].iter().take(r).sum() };

    struct Ctx<'a> {
        weights: &'a [f64],
        k: usize,
        limit: usize,
        count: usize,
        chosen: Vec<usize>,
    }
    fn dfs(
        ctx: &mut Ctx<'_>,
        start: usize,
        sum: f64,
        best_extra: &dyn Fn(usize, usize) -> f64,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        for i in start..ctx.weights.len() {
            if ctx.count > ctx.limit {
                return;
            }
            let s = sum + ctx.weights[i];
            let room = ctx.k - ctx.chosen.len() - 1;
            // Nothing reachable from this branch can exceed 1.
            if s + best_extra(i + 1, room) <= 1.0 + SIZE_TOL {
                continue;
            }
            ctx.chosen.push(i);
            if ctx.chosen.len() >= 2 && s > 1.0 + SIZE_TOL {
                ctx.count += 1;
                emit(&ctx.chosen);
            }
            if room > 0 {
                dfs(ctx, i + 1, s, best_extra, emit);
            }
            ctx.chosen.pop();
        }
    }
    let mut ctx = Ctx { weights, k, limit, count: 0, chosen: Vec::new() };
    dfs(&mut ctx, 0, 0.0, &best_extra, emit);
    ctx.count
}

pub fn build_relaxation(inst: &ScaledInstance, spec: RelaxationSpec) -> Result<LinearProgram, LpError> {
    if spec.k == 1 {
        return Err(LpError::BadSpec(spec.k));
    }
    let edges = &inst.instance.edges;
    let mut variables = Vec::new();
    let mut objective = Vec::new();
    let mut var_of = Vec::with_capacity(edges.len());
    for (e, edge) in edges.iter().enumerate() {
        let mut slots = Vec::with_capacity(edge.arity());
        for (i, ep) in edge.endpoints.iter().enumerate() {
            if inst.allowed[e][i] {
                slots.push(Some(variables.len()));
                variables.push(Variable { edge: e, endpoint: i, edge_id: edge.id, vertex: ep.vertex });
                objective.push(ep.c);
            } else {
                slots.push(None);
            }
        }
        var_of.push(slots);
    }

    let mut rows = Vec::new();
    for (e, edge) in edges.iter().enumerate() {
        let terms = var_of[e].iter().flatten().map(|&j| (j, 1.0)).collect();
        rows.push(Row { kind: RowKind::Edge(edge.id), sense: Sense::Eq, rhs: 1.0, terms });
    }
    let n = inst.num_vertices();
    let incidence: Vec<Vec<(usize, usize)>> = (0..n).map(|u| incident(inst, VertexId(u))).collect();
    for (u, inc) in incidence.iter().enumerate() {
        let terms = inc
            .iter()
            .map(|&(e, i)| (var_of[e][i].unwrap(), edges[e].endpoints[i].p))
            .collect();
        rows.push(Row { kind: RowKind::Load(VertexId(u)), sense: Sense::Le, rhs: 1.0, terms });
    }
    for (u, inc) in incidence.iter().enumerate() {
        let terms: Vec<(usize, f64)> = inc
            .iter()
            .filter(|&&(e, i)| star_weight(inst, &spec, e, i) > 0.5 + SIZE_TOL)
            .map(|&(e, i)| (var_of[e][i].unwrap(), 1.0))
            .collect();
        if !terms.is_empty() {
            rows.push(Row { kind: RowKind::Star(VertexId(u)), sense: Sense::Le, rhs: 1.0, terms });
        }
    }
    if spec.k >= 2 {
        let mut total = 0usize;
        for (u, inc) in incidence.iter().enumerate() {
            let weights: Vec<f64> = inc.iter().map(|&(e, i)| star_weight(inst, &spec, e, i)).collect();
            let mut sets = Vec::new();
            let remaining = MAX_SET_ROWS - total;
            let count = violating_subsets(&weights, spec.k, remaining, &mut |s| sets.push(s.to_vec()));
            total += count;
            if total > MAX_SET_ROWS {
                return Err(LpError::TooManySetRows(total));
            }
            for s in sets {
                let ids = s.iter().map(|&j| edges[inc[j].0].id).collect();
                let terms = s.iter().map(|&j| (var_of[inc[j].0][inc[j].1].unwrap(), 1.0)).collect();
                rows.push(Row {
                    kind: RowKind::Set(VertexId(u), ids),
                    sense: Sense::Le,
                    rhs: (s.len() - 1) as f64,
                    terms,
                });
            }
        }
    }
    Ok(LinearProgram { variables, objective, rows, var_of, vertex_names: inst.instance.vertices.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{scale_to_target, InstanceBuilder};

    fn star_vertex(weights: &[f64]) -> ScaledInstance {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        for (i, &w) in weights.iter().enumerate() {
            let v = b.vertex(format!("v{i}"));
            b.related_edge(&[(u, 0.0), (v, 0.0)], w);
        }
        scale_to_target(&b.build(), 1.0).unwrap()
    }

    #[test]
    fn violating_sets_in_lexicographic_order() {
        let s = star_vertex(&[0.6, 0.6, 0.3]);
        let sets = enumerate_violating_sets(&s, VertexId(0), 3);
        assert_eq!(sets, vec![vec![EdgeId(0), EdgeId(1)], vec![EdgeId(0), EdgeId(1), EdgeId(2)]]);
    }

    #[test]
    fn light_vertices_have_no_violating_sets() {
        assert!(enumerate_violating_sets(&star_vertex(&[0.2, 0.2]), VertexId(0), 3).is_empty());
        assert!(enumerate_violating_sets(&star_vertex(&[0.4; 6]), VertexId(0), 2).is_empty());
    }

    #[test]
    fn pruned_enumeration_matches_exhaustive_scan() {
        let weights = [0.45, 0.1, 0.35, 0.6, 0.05, 0.3, 0.55, 0.2];
        let s = star_vertex(&weights);
        for k in 2..=4 {
            let got = enumerate_violating_sets(&s, VertexId(0), k);
            let mut want = Vec::new();
            for mask in 1u32..(1 << weights.len()) {
                let members: Vec<usize> = (0..weights.len()).filter(|i| mask >> i & 1 == 1).collect();
                let sum: f64 = members.iter().map(|&i| weights[i]).sum();
                if members.len() >= 2 && members.len() <= k && sum > 1.0 + SIZE_TOL {
                    want.push(members.into_iter().map(EdgeId).collect::<Vec<_>>());
                }
            }
            want.sort();
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn single_edge_structure() {
        let s = star_vertex(&[1.0]);
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        assert_eq!(lp.count_rows(|k| matches!(k, RowKind::Edge(_))), 1);
        assert_eq!(lp.count_rows(|k| matches!(k, RowKind::Load(_))), 2);
        assert_eq!(lp.count_rows(|k| matches!(k, RowKind::Star(_))), 2);
    }

    #[test]
    fn star_threshold_is_strict() {
        let s = star_vertex(&[0.5]);
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        assert_eq!(lp.count_rows(|k| matches!(k, RowKind::Star(_))), 0);
    }

    #[test]
    fn forbidden_endpoints_get_no_variable() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.edge(
            vec![
                crate::model::Endpoint { vertex: u, p: 1.5, c: 0.0 },
                crate::model::Endpoint { vertex: v, p: 0.8, c: 0.0 },
            ],
            None,
        );
        let s = scale_to_target(&b.build(), 1.0).unwrap();
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        assert_eq!(lp.variables.len(), 1);
        assert_eq!(lp.var_of[0], vec![None, Some(0)]);
    }

    #[test]
    fn dump_lists_rows() {
        let s = star_vertex(&[0.6, 0.6]);
        let lp = build_relaxation(&s, RelaxationSpec::with_sets(3)).unwrap();
        let text = lp.dump();
        assert!(text.contains("EDGE e0 = 1"));
        assert!(text.contains("LOAD u <= 1 : 0.6*x[e0,u] + 0.6*x[e1,u]"));
        assert!(text.contains("SET u {e0,e1} <= 1"));
    }
}
