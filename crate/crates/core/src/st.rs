//! Slot-based rounding: fill unit slots per vertex with fractional edge mass in
//! non-increasing weight order, then match every edge to one slot at minimum
//! cost.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::lp::FractionalSolution;
use crate::model::{Orientation, ScaledInstance, VertexId};

/// Fractions at or below this are treated as zero.
pub const DROP_TOL: f64 = 1e-12;
const FILL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Slot {
    /// `(edge position, fraction)` in fill order.
    pub fills: Vec<(usize, f64)>,
}

impl Slot {
    pub fn total(&self) -> f64 {
        self.fills.iter().map(|f| f.1).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlotTable {
    /// `slots[u]` has length `k_u`.
    pub slots: Vec<Vec<Slot>>,
}

impl SlotTable {
    pub fn k(&self, u: VertexId) -> usize {
        self.slots[u.0].len()
    }

    /// Total fraction of `edge` placed in `u`'s slots.
    pub fn placed(&self, u: VertexId, edge: usize) -> f64 {
        self.slots[u.0]
            .iter()
            .flat_map(|s| &s.fills)
            .filter(|f| f.0 == edge)
            .map(|f| f.1)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StError {
    #[error("no matching saturates every edge (edge position {0} cannot be placed)")]
    NoPerfectMatching(usize),
}

pub fn build_slots(inst: &ScaledInstance, x: &FractionalSolution) -> SlotTable {
    build_slots_for(inst, x, &vec![true; inst.edges().len()])
}

/// Slot table restricted to the edges flagged in `active`.
pub fn build_slots_for(inst: &ScaledInstance, x: &FractionalSolution, active: &[bool]) -> SlotTable {
    let mut jobs: Vec<Vec<(usize, f64, f64)>> = vec![Vec::new(); inst.num_vertices()];
    for (e, edge) in inst.edges().iter().enumerate() {
        if !active[e] {
            continue;
        }
        for (i, ep) in edge.endpoints.iter().enumerate() {
            let v = x.x[e][i];
            if v > DROP_TOL && inst.allowed[e][i] {
                jobs[ep.vertex.0].push((e, v, ep.p));
            }
        }
    }
    let slots = jobs
        .into_iter()
        .map(|mut list| {
            if list.is_empty() {
                return Vec::new();
            }
            list.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
            let mass: f64 = list.iter().map(|j| j.1).sum();
            let k = ((mass - FILL_TOL).ceil() as usize).max(1);
            let mut slots = vec![Slot::default()];
            let mut cap = 1.0;
            for (e, mut amt, _) in list {
                loop {
                    if cap <= FILL_TOL && slots.len() < k {
                        slots.push(Slot::default());
                        cap = 1.0;
                    }
                    let last = slots.len() == k;
                    let r = if last { amt } else { amt.min(cap) };
                    if r > DROP_TOL {
                        slots.last_mut().unwrap().fills.push((e, r));
                    }
                    cap -= r;
                    amt -= r;
                    if amt <= DROP_TOL {
                        break;
                    }
                }
            }
            slots
        })
        .collect();
    SlotTable { slots }
}

/// Bipartite graph between edges (left) and slots (right).
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentGraph {
    /// Left nodes: edge positions, ascending.
    pub jobs: Vec<usize>,
    /// Right nodes: `(vertex, slot index)`.
    pub slots: Vec<(VertexId, usize)>,
    /// `arcs[left] = [(right, cost)]`, sorted by right index.
    pub arcs: Vec<Vec<(usize, f64)>>,
}

impl AssignmentGraph {
    pub fn from_slots(inst: &ScaledInstance, table: &SlotTable) -> Self {
        let mut slots = Vec::new();
        let mut jobs: Vec<usize> = Vec::new();
        let mut raw: Vec<(usize, usize, f64)> = Vec::new();
        for (u, list) in table.slots.iter().enumerate() {
            for (l, slot) in list.iter().enumerate() {
                let s = slots.len();
                slots.push((VertexId(u), l));
                for &(e, _) in &slot.fills {
                    let edge = &inst.edges()[e];
                    let i = edge.endpoint_index(VertexId(u)).expect("slot vertex is an endpoint");
                    raw.push((e, s, edge.endpoints[i].c));
                    jobs.push(e);
                }
            }
        }
        jobs.sort_unstable();
        jobs.dedup();
        let mut arcs = vec![Vec::new(); jobs.len()];
        for (e, s, c) in raw {
            let j = jobs.binary_search(&e).unwrap();
            arcs[j].push((s, c));
        }
        for a in &mut arcs {
            a.sort_by_key(|t| t.0);
            a.dedup_by_key(|t| t.0);
        }
        Self { jobs, slots, arcs }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for a min-heap.
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum-cost matching saturating every left node, by successive shortest
/// augmenting paths with Dijkstra on reduced costs. Returns the right node of
/// every left node.
pub fn min_cost_perfect_matching(g: &AssignmentGraph) -> Result<Vec<usize>, StError> {
    let n = g.arcs.len();
    let m = g.slots.len();
    let mut u = vec![0.0f64; n];
    let mut v = vec![0.0f64; m];
    let mut owner: Vec<Option<usize>> = vec![None; m];
    let mut dist = vec![f64::INFINITY; m];
    let mut prev: Vec<Option<usize>> = vec![None; m];
    let mut done = vec![false; m];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = f64::INFINITY);
        prev.iter_mut().for_each(|p| *p = None);
        done.iter_mut().for_each(|d| *d = false);
        let mut heap = BinaryHeap::new();
        for &(s, c) in &g.arcs[root] {
            let d = c - u[root] - v[s];
            if d < dist[s] {
                dist[s] = d;
                heap.push(Key(d, s));
            }
        }
        let mut popped = Vec::new();
        let mut target = None;
        while let Some(Key(d, s)) = heap.pop() {
            if done[s] || d > dist[s] {
                continue;
            }
            done[s] = true;
            popped.push(s);
            let Some(j) = owner[s] else {
                target = Some(s);
                break;
            };
            for &(t, c) in &g.arcs[j] {
                if done[t] {
                    continue;
                }
                let nd = d + c - u[j] - v[t];
                if nd < dist[t] {
                    dist[t] = nd;
                    prev[t] = Some(s);
                    heap.push(Key(nd, t));
                }
            }
        }
        let Some(free) = target else {
            return Err(StError::NoPerfectMatching(g.jobs[root]));
        };
        let total = dist[free];
        for &s in &popped {
            let delta = total - dist[s];
            v[s] -= delta;
            if let Some(j) = owner[s] {
                u[j] += delta;
            }
        }
        u[root] += total;
        let mut s = free;
        loop {
            match prev[s] {
                None => {
                    owner[s] = Some(root);
                    break;
                }
                Some(p) => {
                    owner[s] = owner[p];
                    s = p;
                }
            }
        }
    }
    let mut out = vec![usize::MAX; n];
    for (s, o) in owner.iter().enumerate() {
        if let Some(j) = o {
            out[*j] = s;
        }
    }
    Ok(out)
}

/// Rounds the edges flagged in `active`; inactive entries are `None`.
pub fn st_round_partial(
    inst: &ScaledInstance,
    x: &FractionalSolution,
    active: &[bool],
) -> Result<Vec<Option<VertexId>>, StError> {
    let table = build_slots_for(inst, x, active);
    let g = AssignmentGraph::from_slots(inst, &table);
    if let Some(e) = (0..active.len()).find(|&e| active[e] && g.jobs.binary_search(&e).is_err()) {
        return Err(StError::NoPerfectMatching(e));
    }
    let matching = min_cost_perfect_matching(&g)?;
    let mut out = vec![None; active.len()];
    for (j, &s) in matching.iter().enumerate() {
        out[g.jobs[j]] = Some(g.slots[s].0);
    }
    Ok(out)
}

pub fn st_round(inst: &ScaledInstance, x: &FractionalSolution) -> Result<Orientation, StError> {
    let all = vec![true; inst.edges().len()];
    let assignment = st_round_partial(inst, x, &all)?.into_iter().map(Option::unwrap).collect();
    Ok(Orientation { assignment })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{scale_to_target, InstanceBuilder};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(costs: &[Vec<Option<f64>>]) -> Option<f64> {
        fn go(j: usize, costs: &[Vec<Option<f64>>], used: &mut Vec<bool>, acc: f64, best: &mut Option<f64>) {
            if j == costs.len() {
                if best.map_or(true, |b| acc < b) {
                    *best = Some(acc);
                }
                return;
            }
            for s in 0..used.len() {
                if let (false, Some(c)) = (used[s], costs[j][s]) {
                    used[s] = true;
                    go(j + 1, costs, used, acc + c, best);
                    used[s] = false;
                }
            }
        }
        let mut best = None;
        go(0, costs, &mut vec![false; costs[0].len()], 0.0, &mut best);
        best
    }

    fn graph(costs: &[Vec<Option<f64>>]) -> AssignmentGraph {
        let m = costs[0].len();
        AssignmentGraph {
            jobs: (0..costs.len()).collect(),
            slots: (0..m).map(|s| (VertexId(s), 0)).collect(),
            arcs: costs
                .iter()
                .map(|row| row.iter().enumerate().filter_map(|(s, c)| c.map(|c| (s, c))).collect())
                .collect(),
        }
    }

    fn cost_of(g: &AssignmentGraph, m: &[usize]) -> f64 {
        m.iter()
            .enumerate()
            .map(|(j, &s)| g.arcs[j].iter().find(|a| a.0 == s).unwrap().1)
            .sum()
    }

    #[test]
    fn diagonal_two_by_two() {
        let g = graph(&[vec![Some(0.0), Some(1.0)], vec![Some(1.0), Some(0.0)]]);
        assert_eq!(min_cost_perfect_matching(&g).unwrap(), vec![0, 1]);
    }

    #[test]
    fn single_arc() {
        let g = graph(&[vec![None, Some(3.0)]]);
        assert_eq!(min_cost_perfect_matching(&g).unwrap(), vec![1]);
    }

    #[test]
    fn infeasible_matching_is_reported() {
        let g = graph(&[vec![Some(0.0), None], vec![Some(1.0), None]]);
        assert!(min_cost_perfect_matching(&g).is_err());
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let costs: Vec<Vec<Option<f64>>> = (0..6)
                .map(|_| {
                    (0..8)
                        .map(|_| rng.gen_bool(0.6).then(|| (rng.gen_range(0..10) as f64) / 4.0))
                        .collect()
                })
                .collect();
            let g = graph(&costs);
            match (brute_force(&costs), min_cost_perfect_matching(&g)) {
                (Some(best), Ok(m)) => {
                    let mut seen = m.clone();
                    seen.sort();
                    seen.dedup();
                    assert_eq!(seen.len(), m.len());
                    assert!((cost_of(&g, &m) - best).abs() < 1e-9);
                }
                (None, Err(_)) => {}
                (b, r) => panic!("disagreement: {b:?} vs {r:?}"),
            }
        }
    }

    #[test]
    fn slot_filling_splits_across_boundaries() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        for (i, p) in [0.9, 0.6, 0.2].into_iter().enumerate() {
            let v = b.vertex(format!("v{i}"));
            b.related_edge(&[(u, 0.0), (v, 0.0)], p);
        }
        let s = scale_to_target(&b.build(), 1.0).unwrap();
        let x = FractionalSolution { x: vec![vec![0.4, 0.6], vec![0.9, 0.1], vec![0.4, 0.6]], objective_value: 0.0 };
        let t = build_slots(&s, &x);
        assert_eq!(t.k(u), 2);
        let s0 = &t.slots[0][0].fills;
        let s1 = &t.slots[0][1].fills;
        assert_eq!(s0[0], (0, 0.4));
        assert!((s0[1].1 - 0.6).abs() < 1e-12 && s0[1].0 == 1);
        assert!((s1[0].1 - 0.3).abs() < 1e-12 && s1[0].0 == 1);
        assert_eq!(s1[1], (2, 0.4));
    }

    #[test]
    fn integral_solution_is_reproduced() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 1.0), (v, 0.0)], 0.5);
        b.related_edge(&[(u, 0.0), (v, 2.0)], 0.5);
        let s = scale_to_target(&b.build(), 1.0).unwrap();
        let x = FractionalSolution { x: vec![vec![1.0, 0.0], vec![0.0, 1.0]], objective_value: 2.0 };
        let t = build_slots(&s, &x);
        assert_eq!((t.k(u), t.k(v)), (1, 1));
        let o = st_round(&s, &x).unwrap();
        assert_eq!(o.assignment, vec![u, v]);
    }
}
