//! Instance generators: the structured gap families and seeded random ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::model::{EdgeClass, Endpoint, Instance, InstanceBuilder, Meta, VertexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("parameter {name} = {value}: {reason}")]
    BadParam { name: &'static str, value: f64, reason: &'static str },
}

fn bad(name: &'static str, value: f64, reason: &'static str) -> GenError {
    GenError::BadParam { name, value, reason }
}

/// `v` as an integer if it is one (within 1e-9).
fn integral(name: &'static str, v: f64) -> Result<usize, GenError> {
    let r = v.round();
    if v.is_finite() && r >= 1.0 && (v - r).abs() <= 1e-9 {
        Ok(r as usize)
    } else {
        Err(bad(name, v, "must be a positive integer"))
    }
}

fn meta(generator: &str, params: Value) -> Meta {
    let params = match params {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    Meta { generator: generator.to_string(), params }
}

fn two(b: &mut InstanceBuilder, u: VertexId, pu: f64, cu: f64, v: VertexId, pv: f64, cv: f64, class: Option<EdgeClass>) {
    b.edge(vec![Endpoint { vertex: u, p: pu, c: cu }, Endpoint { vertex: v, p: pv, c: cv }], class);
}

/// Five vertices, three unit/half edges and loads that make every vertex
/// fractionally full. Each load is split into two equal loops so the Star
/// rows stay satisfiable.
pub fn gen_tightness_a(alpha: f64, eps: f64) -> Result<Instance, GenError> {
    if !(0.5..1.0).contains(&alpha) {
        return Err(bad("alpha", alpha, "must lie in [1/2, 1)"));
    }
    if !(eps > 0.0 && eps <= 1.0 - alpha) {
        return Err(bad("epsilon", eps, "must lie in (0, 1 - alpha]"));
    }
    let mut b = InstanceBuilder::new();
    let u = b.vertex("u");
    let v1 = b.vertex("v1");
    let v2 = b.vertex("v2");
    let u2 = b.vertex("u'");
    let w2 = b.vertex("v'");
    two(&mut b, u, 1.0, 0.0, v1, 1.0, eps, None);
    two(&mut b, u, 0.5, 0.0, v2, 0.5, eps, None);
    // The unit cost sits on u': the fractional side that the local step rounds up.
    two(&mut b, u2, 1.0, 1.0, w2, 1.0, 0.0, None);
    for (v, q) in [
        (u, 0.5 * alpha - 0.5 * eps),
        (v1, 1.0 - alpha),
        (v2, 0.5 + 0.5 * alpha + 0.5 * eps),
        (u2, 1.0 - alpha - eps),
        (w2, alpha + eps),
    ] {
        b.split_load(v, q, 2);
    }
    b.meta(meta("tightness-a", json!({ "alpha": alpha, "epsilon": eps })));
    Ok(b.build())
}

/// Three vertices; the unit edge is locally rounded toward `u` and the half
/// edge follows it in the matching.
pub fn gen_tightness_b(alpha: f64, eps: f64) -> Result<Instance, GenError> {
    if !(0.5..1.0).contains(&alpha) {
        return Err(bad("alpha", alpha, "must lie in [1/2, 1)"));
    }
    if !(eps > 0.0 && eps <= 1.0 - alpha) {
        return Err(bad("epsilon", eps, "must lie in (0, 1 - alpha]"));
    }
    let mut b = InstanceBuilder::new();
    let u = b.vertex("u");
    let v1 = b.vertex("v1");
    let v2 = b.vertex("v2");
    two(&mut b, u, 1.0, 1.0, v1, 1.0, 0.0, None);
    two(&mut b, u, 0.5, 0.0, v2, 0.5, eps, None);
    for (v, q) in [(u, 1.0 - alpha - eps), (v1, alpha + 0.5 * eps), (v2, 0.5 + 0.5 * eps)] {
        b.split_load(v, q, 2);
    }
    b.meta(meta("tightness-b", json!({ "alpha": alpha, "epsilon": eps })));
    Ok(b.build())
}

/// Two vertices joined by an edge of weight `1 − ε` whose cheap side is
/// overloaded; loads are split into loops of weight `ε/k`.
pub fn gen_lb_cost(gamma: f64, eps: f64, k: usize) -> Result<Instance, GenError> {
    if !(0.0..0.25).contains(&gamma) {
        return Err(bad("gamma", gamma, "must lie in [0, 1/4)"));
    }
    let qv = 0.25 - gamma - 2.0 * eps;
    if !(eps > 0.0 && qv >= 0.0) {
        return Err(bad("epsilon", eps, "must be positive with 0.25 - gamma - 2 epsilon >= 0"));
    }
    if k == 0 {
        return Err(bad("k", 0.0, "must be positive"));
    }
    let mut b = InstanceBuilder::new();
    let u = b.vertex("u");
    let v = b.vertex("v");
    two(&mut b, u, 1.0 - eps, 0.0, v, 1.0 - eps, 1.0, None);
    for (x, q) in [(u, 0.75 + gamma + 2.0 * eps), (v, qv)] {
        let count = (q * k as f64 / eps).round() as usize;
        if q > 0.0 {
            b.split_load(x, q, count.max(1));
        }
    }
    b.meta(meta("lb-cost", json!({ "gamma": gamma, "epsilon": eps, "k": k })));
    Ok(b.build())
}

/// `1/ε` paths of `1/ε` vertices each. Requires `1 − 6ε ≥ 0`.
pub fn gen_gbu_paths(eps: f64, k: usize) -> Result<Instance, GenError> {
    let n = integral("1/epsilon", 1.0 / eps)?;
    gen_gbu_paths_sized(n, n, eps, k)
}

/// Path family with explicit path count and length. Heavy path edges
/// (`1 − 6ε` to the right, `0.5 + ε` to the left, the first edge related),
/// per-vertex load `1/3` in `k/ε` loops, one light half-weight hyperedge per
/// path over its non-leftmost vertices and one over all leftmost vertices.
pub fn gen_gbu_paths_sized(paths: usize, len: usize, eps: f64, k: usize) -> Result<Instance, GenError> {
    if !(eps > 0.0) {
        return Err(bad("epsilon", eps, "must be positive"));
    }
    let heavy = 1.0 - 6.0 * eps;
    if heavy < 0.0 {
        return Err(bad("epsilon", eps, "1 - 6 epsilon is a negative processing time"));
    }
    if paths == 0 || len < 2 {
        return Err(bad("len", len as f64, "need at least one path of two vertices"));
    }
    let loops = integral("k/epsilon", k as f64 / eps)?;
    let mut b = InstanceBuilder::new();
    let grid: Vec<Vec<VertexId>> =
        (0..paths).map(|i| (0..len).map(|j| b.vertex(format!("p{i}_{j}"))).collect()).collect();
    for path in &grid {
        two(&mut b, path[0], heavy, 0.0, path[1], heavy, 0.0, Some(EdgeClass::Heavy));
        for w in path[1..].windows(2) {
            two(&mut b, w[0], 0.5 + eps, 0.0, w[1], heavy, 0.0, Some(EdgeClass::Heavy));
        }
    }
    for path in &grid {
        let endpoints = path[1..].iter().map(|&v| Endpoint { vertex: v, p: 0.5, c: 0.0 }).collect();
        b.edge(endpoints, Some(EdgeClass::Light));
    }
    let firsts = grid.iter().map(|p| Endpoint { vertex: p[0], p: 0.5, c: 0.0 }).collect();
    b.edge(firsts, Some(EdgeClass::Light));
    for path in &grid {
        for &v in path {
            b.split_load(v, 1.0 / 3.0, loops);
        }
    }
    b.meta(meta(
        "gbu-paths",
        json!({ "epsilon": eps, "k": k, "paths": paths, "len": len }),
    ));
    Ok(b.build())
}

/// Cycle of `4/ε` vertices with heavy unrelated edges (`1 − ε'` toward the
/// counter-clockwise end, `0.5 + ε'` toward the clockwise end), a shared
/// half-weight hyperedge, and unit cost on one edge when oriented clockwise.
pub fn gen_gbu_cycle(gamma: f64, eps: f64, k: usize) -> Result<Instance, GenError> {
    if !(1.0 / 12.0 - 1e-12..=0.25).contains(&gamma) {
        return Err(bad("gamma", gamma, "must lie in [1/12, 1/4]"));
    }
    let e1 = eps / 4.0;
    let n = integral("4/epsilon", 1.0 / e1)?;
    if n < 2 {
        return Err(bad("epsilon", eps, "cycle needs at least two vertices"));
    }
    let loops = integral("4k/epsilon", k as f64 / e1)?;
    let g1 = gamma / (1.0 - 4.0 * e1);
    let q = g1 + 0.25 - (4.0 * g1 + 0.5) * e1;
    let mut b = InstanceBuilder::new();
    let cycle: Vec<VertexId> = (0..n).map(|i| b.vertex(format!("c{i}"))).collect();
    for i in 0..n {
        let (ccw, cw) = (cycle[i], cycle[(i + 1) % n]);
        let cost = if i == 0 { 1.0 } else { 0.0 };
        two(&mut b, ccw, 1.0 - e1, 0.0, cw, 0.5 + e1, cost, Some(EdgeClass::Heavy));
    }
    let hyper = cycle.iter().map(|&v| Endpoint { vertex: v, p: 0.5, c: 0.0 }).collect();
    b.edge(hyper, Some(EdgeClass::Light));
    for &v in &cycle {
        b.split_load(v, q, loops);
    }
    b.meta(meta("gbu-cycle", json!({ "gamma": gamma, "epsilon": eps, "k": k })));
    Ok(b.build())
}

/// Random instance families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Related edges between two distinct vertices.
    Gb,
    /// Related heavy edges plus light hyperedges with weights ≤ β.
    Gbuh { beta: f64 },
    /// Unrelated heavy edges in `(β, 1]` plus light hyperedges ≤ β.
    Gbu { beta: f64 },
    /// Every job may run on every machine, unrelated weights.
    Gap,
    /// Edges whose two weights differ by at most a factor `c`.
    Srgb { c: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Gb => "gb",
            Self::Gbuh { .. } => "gbuh",
            Self::Gbu { .. } => "gbu",
            Self::Gap => "gap",
            Self::Srgb { .. } => "srgb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Self { max_vertices: 6, max_edges: 10 }
    }
}

/// Weight from `{0.1, 0.2, ..., 1.0}` restricted to `(lo, hi]`.
fn tenth(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let first = ((lo * 10.0 + 1e-9).floor() as i64 + 1).max(1);
    let last = ((hi * 10.0 + 1e-9).floor() as i64).min(10);
    let t = if first > last { last.max(1) } else { rng.gen_range(first..=last) };
    t as f64 / 10.0
}

fn cost(rng: &mut ChaCha8Rng) -> f64 {
    // Two decimals keep the JSON small and oracle ties meaningful.
    rng.gen_range(0..=100) as f64 / 100.0
}

fn pair(rng: &mut ChaCha8Rng, n: usize) -> (VertexId, VertexId) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (VertexId(a), VertexId(b))
}

pub fn gen_random(family: Family, seed: u64, sizes: Sizes) -> Result<Instance, GenError> {
    if sizes.max_vertices < 2 || sizes.max_edges < 1 {
        return Err(bad("sizes", sizes.max_vertices as f64, "need at least 2 vertices and 1 edge"));
    }
    match family {
        Family::Gbuh { beta } | Family::Gbu { beta } if !(0.0..=1.0).contains(&beta) => {
            return Err(bad("beta", beta, "must lie in [0, 1]"))
        }
        Family::Srgb { c } if !(c >= 1.0) => return Err(bad("c", c, "must be at least 1")),
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=sizes.max_vertices);
    let m = rng.gen_range(1..=sizes.max_edges);
    let mut b = InstanceBuilder::new();
    let vs: Vec<VertexId> = (0..n).map(|i| b.vertex(format!("v{i}"))).collect();
    let hyper = |rng: &mut ChaCha8Rng, b: &mut InstanceBuilder, beta: f64| {
        let arity = rng.gen_range(2..=n.min(4));
        let mut chosen = vs.clone();
        chosen.shuffle(rng);
        chosen.truncate(arity);
        chosen.sort();
        let endpoints = chosen
            .into_iter()
            .map(|v| Endpoint { vertex: v, p: tenth(rng, 0.0, beta.max(0.1)).min(beta), c: cost(rng) })
            .collect();
        b.edge(endpoints, Some(EdgeClass::Light));
    };
    for j in 0..m {
        match family {
            Family::Gb => {
                let (u, v) = pair(&mut rng, n);
                let p = tenth(&mut rng, 0.0, 1.0);
                let (cu, cv) = (cost(&mut rng), cost(&mut rng));
                b.related_edge(&[(u, cu), (v, cv)], p);
            }
            Family::Gbuh { beta } => {
                // The first edge is a unit heavy edge so the optimum is ≥ 1.
                if j == 0 || (beta < 1.0 && rng.gen_bool(0.5)) {
                    let (u, v) = pair(&mut rng, n);
                    let p = if j == 0 { 1.0 } else { tenth(&mut rng, beta, 1.0) };
                    let (cu, cv) = (cost(&mut rng), cost(&mut rng));
                    two(&mut b, u, p, cu, v, p, cv, Some(EdgeClass::Heavy));
                } else {
                    hyper(&mut rng, &mut b, beta);
                }
            }
            Family::Gbu { beta } => {
                if j == 0 || (beta < 1.0 && rng.gen_bool(0.5)) {
                    let (u, v) = pair(&mut rng, n);
                    let (pu, pv) = if j == 0 {
                        (1.0, 1.0)
                    } else {
                        (tenth(&mut rng, beta, 1.0), tenth(&mut rng, beta, 1.0))
                    };
                    let (cu, cv) = (cost(&mut rng), cost(&mut rng));
                    two(&mut b, u, pu, cu, v, pv, cv, Some(EdgeClass::Heavy));
                } else {
                    hyper(&mut rng, &mut b, beta);
                }
            }
            Family::Gap => {
                let endpoints = vs
                    .iter()
                    .map(|&v| Endpoint { vertex: v, p: tenth(&mut rng, 0.0, 1.0), c: cost(&mut rng) })
                    .collect();
                b.edge(endpoints, None);
            }
            Family::Srgb { c } => {
                let (u, v) = pair(&mut rng, n);
                let pu = tenth(&mut rng, 0.0, 1.0);
                let ratio = rng.gen_range(1.0..=c.min(10.0).max(1.0));
                let pv = (pu * ratio).min(1.0);
                let (pu, pv) = if rng.gen_bool(0.5) { (pu, pv) } else { (pv, pu) };
                let (cu, cv) = (cost(&mut rng), cost(&mut rng));
                two(&mut b, u, pu, cu, v, pv, cv, None);
            }
        }
    }
    let mut params = json!({ "family": family.name(), "seed": seed,
        "max_vertices": sizes.max_vertices, "max_edges": sizes.max_edges });
    match family {
        Family::Gbuh { beta } | Family::Gbu { beta } => params["beta"] = json!(beta),
        Family::Srgb { c } => params["c"] = json!(c),
        _ => {}
    }
    b.meta(meta("random", params));
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;
    use crate::model::validate;

    #[test]
    fn tightness_a_loads() {
        let inst = gen_tightness_a(0.8, 0.01).unwrap();
        let loops = inst.self_loop_loads();
        assert!((loops[0] - 0.395).abs() < 1e-12);
        assert_eq!(inst.edges.len(), 3 + 10);
        assert!(validate(&inst).is_empty());
    }

    #[test]
    fn tightness_b_loads() {
        let inst = gen_tightness_b(0.8, 0.01).unwrap();
        assert!((inst.self_loop_loads()[1] - 0.805).abs() < 1e-12);
    }

    #[test]
    fn lb_cost_loop_counts() {
        let inst = gen_lb_cost(0.0, 0.05, 3).unwrap();
        let at_u = inst.edges.iter().filter(|e| e.is_self_loop() && e.endpoints[0].vertex == VertexId(0)).count();
        assert_eq!(at_u, 51);
        assert!((inst.self_loop_loads()[0] - 0.85).abs() < 1e-12);
        assert!((inst.edges[1].endpoints[0].p - 1.0 / 60.0).abs() < 1e-12);
    }

    #[test]
    fn gbu_paths_rejects_negative_weights() {
        assert!(gen_gbu_paths(0.25, 3).is_err());
        assert!(gen_gbu_paths(1.0 / 3.0, 3).is_err());
        assert!(gen_gbu_paths(0.3, 3).is_err());
    }

    #[test]
    fn gbu_paths_structure() {
        let inst = gen_gbu_paths_sized(2, 4, 1.0 / 12.0, 3).unwrap();
        let heavy = inst.edges.iter().filter(|e| e.class == Some(EdgeClass::Heavy)).count();
        let light: Vec<usize> =
            inst.edges.iter().filter(|e| e.class == Some(EdgeClass::Light)).map(|e| e.arity()).collect();
        assert_eq!(heavy, 2 * 3);
        assert_eq!(light, vec![3, 3, 2]);
        assert!(validate(&inst).is_empty());
    }

    #[test]
    fn gbu_cycle_parameters() {
        let inst = gen_gbu_cycle(1.0 / 12.0, 0.2, 3).unwrap();
        assert_eq!(inst.vertices.len(), 20);
        let g1 = (1.0 / 12.0) / 0.8;
        let q = g1 + 0.25 - (4.0 * g1 + 0.5) * 0.05;
        assert!((inst.self_loop_loads()[0] - q).abs() < 1e-12);
        assert_eq!(inst.edges[0].endpoints[1].c, 1.0);
    }

    #[test]
    fn random_is_deterministic() {
        for fam in [Family::Gb, Family::Gbuh { beta: 0.4 }, Family::Gap, Family::Srgb { c: 2.0 }] {
            let a = serialize_instance(&gen_random(fam, 11, Sizes::default()).unwrap());
            let b = serialize_instance(&gen_random(fam, 11, Sizes::default()).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn random_family_bounds() {
        for seed in 0..50 {
            let inst = gen_random(Family::Gbuh { beta: 0.4 }, seed, Sizes::default()).unwrap();
            for e in &inst.edges {
                match e.class {
                    Some(EdgeClass::Light) => assert!(e.endpoints.iter().all(|ep| ep.p <= 0.4)),
                    _ => assert!(e.is_related() && e.max_weight() > 0.4),
                }
            }
            let gb = gen_random(Family::Gb, seed, Sizes::default()).unwrap();
            assert!(gb.edges.iter().all(|e| e.is_related() && e.arity() == 2));
            let sr = gen_random(Family::Srgb { c: 3.0 }, seed, Sizes::default()).unwrap();
            for e in &sr.edges {
                let (a, b) = (e.endpoints[0].p, e.endpoints[1].p);
                assert!(a <= 3.0 * b + 1e-12 && b <= 3.0 * a + 1e-12);
            }
        }
    }
}
