//! Exhaustive ground truth for small instances: the optimal makespan and
//! `C(T)`, the cheapest orientation whose makespan is at most `T`.

use serde::Serialize;
use thiserror::Error;

use crate::model::{Instance, Orientation, VertexId};

pub const DEFAULT_CAP: u128 = 10_000_000;
/// Slack on `≤ T` comparisons, absorbing float noise in generated instances.
pub const MAKESPAN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("search space has {product} orientations, above the cap of {cap}")]
    CapExceeded { product: u128, cap: u128 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min_makespan: f64,
    /// Lexicographically first orientation attaining `min_makespan`.
    pub makespan_argmin: Orientation,
    /// `C(T)`; `None` stands for +∞.
    pub cost_at_target: Option<f64>,
    pub cost_argmin: Option<Orientation>,
    /// Complete orientations evaluated across both searches.
    pub enumerated: u64,
}

#[derive(Debug, Serialize)]
struct OracleJson {
    min_makespan: f64,
    cost_at_target: Option<f64>,
    enumerated: u64,
}

impl OracleResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&OracleJson {
            min_makespan: self.min_makespan,
            cost_at_target: self.cost_at_target,
            enumerated: self.enumerated,
        })
        .expect("oracle result serializes")
    }
}

/// Product of edge arities, saturating.
pub fn search_space(inst: &Instance) -> u128 {
    inst.edges.iter().fold(1u128, |acc, e| acc.saturating_mul(e.arity().max(1) as u128))
}

struct Search<'a> {
    /// Non-loop edges: `(endpoint vertex, p, c)` lists, in id order.
    choices: Vec<Vec<(usize, f64, f64)>>,
    positions: Vec<usize>,
    /// `suffix_min_cost[i]`: cheapest possible cost of edges `i..`.
    suffix_min_cost: Vec<f64>,
    loads: Vec<f64>,
    pick: Vec<usize>,
    best_pick: Option<Vec<usize>>,
    leaves: u64,
    inst: &'a Instance,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance) -> Self {
        let mut choices = Vec::new();
        let mut positions = Vec::new();
        let mut loads = vec![0.0; inst.vertices.len()];
        for (i, e) in inst.edges.iter().enumerate() {
            if e.is_self_loop() {
                loads[e.endpoints[0].vertex.0] += e.endpoints[0].p;
            } else {
                choices.push(e.endpoints.iter().map(|ep| (ep.vertex.0, ep.p, ep.c)).collect::<Vec<_>>());
                positions.push(i);
            }
        }
        let mut suffix_min_cost = vec![0.0; choices.len() + 1];
        for i in (0..choices.len()).rev() {
            let m = choices[i].iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
            suffix_min_cost[i] = suffix_min_cost[i + 1] + m;
        }
        let n = choices.len();
        Self {
            choices,
            positions,
            suffix_min_cost,
            loads,
            pick: vec![0; n],
            best_pick: None,
            leaves: 0,
            inst,
        }
    }

    fn base_max(&self) -> f64 {
        self.loads.iter().copied().fold(0.0, f64::max)
    }

    fn makespan(&mut self, i: usize, cur_max: f64, best: &mut f64) {
        if cur_max >= *best {
            return;
        }
        if i == self.choices.len() {
            self.leaves += 1;
            *best = cur_max;
            self.best_pick = Some(self.pick.clone());
            return;
        }
        for k in 0..self.choices[i].len() {
            let (v, p, _) = self.choices[i][k];
            // Restore by value: `+= p; -= p` would accumulate rounding residue.
            let old = self.loads[v];
            self.loads[v] = old + p;
            self.pick[i] = k;
            self.makespan(i + 1, cur_max.max(old + p), best);
            self.loads[v] = old;
        }
    }

    fn cost(&mut self, i: usize, limit: f64, cost: f64, best: &mut f64) {
        if cost + self.suffix_min_cost[i] >= *best {
            return;
        }
        if i == self.choices.len() {
            self.leaves += 1;
            *best = cost;
            self.best_pick = Some(self.pick.clone());
            return;
        }
        for k in 0..self.choices[i].len() {
            let (v, p, c) = self.choices[i][k];
            if self.loads[v] + p > limit {
                continue;
            }
            let old = self.loads[v];
            self.loads[v] = old + p;
            self.pick[i] = k;
            self.cost(i + 1, limit, cost + c, best);
            self.loads[v] = old;
        }
    }

    fn orientation(&self, pick: &[usize]) -> Orientation {
        let mut assignment: Vec<VertexId> =
            self.inst.edges.iter().map(|e| e.endpoints[0].vertex).collect();
        for (j, &k) in pick.iter().enumerate() {
            assignment[self.positions[j]] = VertexId(self.choices[j][k].0);
        }
        Orientation { assignment }
    }
}

pub fn oracle(inst: &Instance, target: f64, cap: u128) -> Result<OracleResult, OracleError> {
    let product = search_space(inst);
    if product > cap {
        return Err(OracleError::CapExceeded { product, cap });
    }
    let mut s = Search::new(inst);
    let base = s.base_max();

    let mut best = f64::INFINITY;
    s.makespan(0, base, &mut best);
    let makespan_argmin = s.orientation(s.best_pick.as_ref().expect("a complete orientation exists"));
    let min_makespan = best;

    s.best_pick = None;
    let limit = target + MAKESPAN_SLACK;
    let mut best_cost = f64::INFINITY;
    if base <= limit && min_makespan <= limit {
        s.cost(0, limit, 0.0, &mut best_cost);
    }
    let cost_argmin = s.best_pick.clone().map(|p| s.orientation(&p));
    let cost_at_target = cost_argmin.as_ref().map(|_| best_cost);
    Ok(OracleResult { min_makespan, makespan_argmin, cost_at_target, cost_argmin, enumerated: s.leaves })
}

/// Optimal makespan only.
pub fn min_makespan(inst: &Instance, cap: u128) -> Result<f64, OracleError> {
    let product = search_space(inst);
    if product > cap {
        return Err(OracleError::CapExceeded { product, cap });
    }
    let mut s = Search::new(inst);
    let mut best = f64::INFINITY;
    let base = s.base_max();
    s.makespan(0, base, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate, InstanceBuilder};

    fn brute(inst: &Instance, target: f64) -> (f64, Option<f64>) {
        let edges = &inst.edges;
        let mut idx = vec![0usize; edges.len()];
        let (mut best_m, mut best_c) = (f64::INFINITY, None::<f64>);
        loop {
            let o = Orientation {
                assignment: edges.iter().zip(&idx).map(|(e, &k)| e.endpoints[k].vertex).collect(),
            };
            let ev = evaluate(inst, &o).unwrap();
            best_m = best_m.min(ev.makespan);
            if ev.makespan <= target + MAKESPAN_SLACK {
                best_c = Some(best_c.map_or(ev.total_cost, |c| c.min(ev.total_cost)));
            }
            let mut i = 0;
            loop {
                if i == idx.len() {
                    return (best_m, best_c);
                }
                idx[i] += 1;
                if idx[i] < edges[i].arity() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn single_edge() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 0.0), (v, 1.0)], 1.0);
        let r = oracle(&b.build(), 1.0, DEFAULT_CAP).unwrap();
        assert_eq!(r.min_makespan, 1.0);
        assert_eq!(r.cost_at_target, Some(0.0));
        assert_eq!(r.cost_argmin.unwrap().assignment, vec![u]);
    }

    #[test]
    fn infinite_cost_when_target_unreachable() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        b.self_loop(u, 2.0);
        let r = oracle(&b.build(), 1.0, DEFAULT_CAP).unwrap();
        assert_eq!(r.min_makespan, 2.0);
        assert_eq!(r.cost_at_target, None);
        assert!(r.to_json().contains("\"cost_at_target\":null"));
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        for _ in 0..5 {
            b.related_edge(&[(u, 0.0), (v, 0.0)], 1.0);
        }
        assert_eq!(
            oracle(&b.build(), 1.0, 16),
            Err(OracleError::CapExceeded { product: 32, cap: 16 })
        );
    }

    #[test]
    fn agrees_with_plain_enumeration() {
        use crate::lab::{gen_random, Family, Sizes};
        for seed in 0..40 {
            let fam = if seed % 2 == 0 { Family::Gb } else { Family::Gap };
            let inst = gen_random(fam, seed, Sizes { max_vertices: 4, max_edges: 6 }).unwrap();
            for target in [1.0, 1.5, 2.5] {
                let r = oracle(&inst, target, DEFAULT_CAP).unwrap();
                let (m, c) = brute(&inst, target);
                assert!((r.min_makespan - m).abs() < 1e-12);
                match (r.cost_at_target, c) {
                    (Some(a), Some(b)) => assert!((a - b).abs() < 1e-12),
                    (None, None) => {}
                    other => panic!("seed {seed}: {other:?}"),
                }
                let ev = evaluate(&inst, &r.makespan_argmin).unwrap();
                assert!((ev.makespan - m).abs() < 1e-12);
            }
        }
    }
}
