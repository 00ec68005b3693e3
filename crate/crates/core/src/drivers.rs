//! Per-variant orchestration: parameter choice, solving at a target, the
//! makespan binary search and the reduction from general assignment.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::framework::{framework_round_detailed, LocalStepResult};
use crate::lp::{build_relaxation, sanitize_solution, solve_lp, solve_lp_exact, FractionalSolution, LpError, RelaxationSpec};
use crate::model::{evaluate, EdgeClass, EdgeId, Endpoint, Evaluation, Instance, Orientation, ScaleError, ScaledInstance};
use crate::model::{scale_to_target, Edge};
use crate::threshold::{two_step_eps_max, ThresholdFunction};

/// Additive slack used when checking promised bounds.
pub const CERTIFY_TOL: f64 = 1e-6;
const RANGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum VariantConfig {
    Gb { gamma: f64 },
    Gbuh { beta: f64, gamma: f64 },
    Gbu { beta: f64, gamma: f64 },
    Srgb { c: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{name} = {value} outside [{lo}, {hi}]")]
pub struct ConfigError {
    pub name: &'static str,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

fn within(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value >= lo - RANGE_TOL && value <= hi + RANGE_TOL {
        Ok(())
    } else {
        Err(ConfigError { name, value, lo, hi })
    }
}

impl VariantConfig {
    /// Smallest admissible `γ` for plain graph balancing.
    pub fn gb_gamma_min() -> f64 {
        1.5 - 33f64.sqrt() / 4.0
    }

    pub fn gb(gamma: f64) -> Result<Self, ConfigError> {
        within("gamma", gamma, Self::gb_gamma_min(), 0.25)?;
        Ok(Self::Gb { gamma })
    }

    pub fn gbuh(beta: f64, gamma: f64) -> Result<Self, ConfigError> {
        within("beta", beta, 0.0, 1.0)?;
        within("gamma", gamma, Self::light_gamma_min(beta), 0.25)?;
        Ok(Self::Gbuh { beta, gamma })
    }

    /// The step-at-one-third threshold needs `α = 2γ + 1/2 ≥ 2/3`, so `γ`
    /// is bounded below by 1/12 as well as by `β/3 − 1/12`.
    pub fn gbu(beta: f64, gamma: f64) -> Result<Self, ConfigError> {
        within("beta", beta, 2f64.sqrt() - 1.0, 1.0)?;
        within("gamma", gamma, Self::light_gamma_min(beta), 0.25)?;
        Ok(Self::Gbu { beta, gamma })
    }

    pub fn srgb(c: f64) -> Result<Self, ConfigError> {
        within("c", c, 1.0, f64::MAX)?;
        Ok(Self::Srgb { c })
    }

    /// `max(1/12, β/3 − 1/12)`.
    pub fn light_gamma_min(beta: f64) -> f64 {
        (1.0 / 12.0f64).max(beta / 3.0 - 1.0 / 12.0)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gb { .. } => "gb",
            Self::Gbuh { .. } => "gbuh",
            Self::Gbu { .. } => "gbu",
            Self::Srgb { .. } => "srgb",
        }
    }

    /// `γ` for the first three variants, `c` for the semi-related one.
    pub fn param(&self) -> f64 {
        match *self {
            Self::Gb { gamma } | Self::Gbuh { gamma, .. } | Self::Gbu { gamma, .. } => gamma,
            Self::Srgb { c } => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters {
    pub threshold: ThresholdFunction,
    /// Largest Set-constraint size; 0 for the plain relaxation.
    pub k: usize,
    pub makespan_factor: f64,
    pub cost_factor: f64,
}

/// Root of `g(a) = (1/c + 1/2)a³ + (5/(2c) − 1/2)a² − 7/(2c)·a + 1/c` on
/// `[1/2, 1 − 1/(4c)]`, by bisection.
pub fn cubic_root(c: f64) -> f64 {
    assert!(c >= 1.0, "c must be at least 1");
    let (mut lo, mut hi) = (0.5, 1.0 - 0.25 / c);
    debug_assert!(cubic(c, lo) < 0.0 && cubic(c, hi) > 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if cubic(c, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn cubic(c: f64, a: f64) -> f64 {
    (1.0 / c + 0.5) * a.powi(3) + (2.5 / c - 0.5) * a * a - 3.5 / c * a + 1.0 / c
}

/// Breakpoint `b = (1.5 + a/2 − 1/a)/c` paired with the root `a`.
pub fn srgb_breakpoint(c: f64, a: f64) -> f64 {
    (1.5 + 0.5 * a - 1.0 / a) / c
}

/// The three per-vertex load bounds that the choice of `(a, b)` equalizes.
pub fn srgb_load_terms(c: f64, a: f64, b: f64) -> [f64; 3] {
    [1.0 / a + c * b, 1.5 + 0.5 * a, 2.0 - (2.0 - 1.0 / a) * b]
}

pub fn select_parameters(cfg: &VariantConfig) -> Parameters {
    match *cfg {
        VariantConfig::Gb { gamma } if gamma >= 1.0 / 12.0 - RANGE_TOL => {
            let alpha = (2.0 * gamma + 0.5).max(2.0 / 3.0);
            Parameters {
                threshold: ThresholdFunction::step_half(alpha).expect("alpha in range"),
                k: 0,
                makespan_factor: 1.75 + gamma,
                cost_factor: 1.0 / (2.0 * gamma + 0.5),
            }
        }
        VariantConfig::Gb { gamma } => {
            let eps = (1.0 / 6.0 - 2.0 * gamma).min(two_step_eps_max());
            Parameters {
                threshold: ThresholdFunction::two_step(eps).expect("eps in range"),
                k: 3,
                makespan_factor: 1.75 + gamma,
                cost_factor: 1.0 / (2.0 * gamma + 0.5),
            }
        }
        VariantConfig::Gbuh { gamma, .. } => Parameters {
            threshold: ThresholdFunction::step_half((2.0 * gamma + 0.5).max(2.0 / 3.0)).expect("alpha in range"),
            k: 0,
            makespan_factor: 1.75 + gamma,
            cost_factor: 1.0 / (2.0 * gamma + 0.5),
        },
        VariantConfig::Gbu { beta, gamma } => {
            let alpha = (2.0 * gamma + 0.5).max(1.0 / 3.0 + 2.0 * beta / 3.0).min(1.0);
            Parameters {
                threshold: ThresholdFunction::step_third(alpha, beta).expect("alpha in range"),
                k: 3,
                makespan_factor: 1.75 + gamma,
                cost_factor: 1.0 / (2.0 * gamma + 0.5),
            }
        }
        VariantConfig::Srgb { c } => {
            let a = cubic_root(c);
            let b = srgb_breakpoint(c, a).max(0.0);
            Parameters {
                threshold: ThresholdFunction::step_at(a, b).expect("a in range"),
                k: 3,
                makespan_factor: 1.5 + 0.5 * a,
                cost_factor: 1.0 / a,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Solve the relaxation in exact rational arithmetic.
    pub exact: bool,
    /// Override the Set-constraint size chosen by the variant.
    pub lp_k: Option<usize>,
}

impl SolveOptions {
    /// Honors `BALANCE_FORGE_EXACT=1`.
    pub fn from_env() -> Self {
        let exact = std::env::var("BALANCE_FORGE_EXACT").is_ok_and(|v| v == "1");
        Self { exact, lp_k: None }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("relaxation failed: {0}")]
    Lp(LpError),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl From<LpError> for SolveError {
    fn from(e: LpError) -> Self {
        match e {
            LpError::Infeasible => SolveError::Infeasible(e.to_string()),
            other => SolveError::Lp(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub target: f64,
    pub config: VariantConfig,
    pub parameters: Parameters,
    /// Optimal value of the relaxation that was rounded.
    pub lp_value: f64,
    pub orientation: Orientation,
    /// Measured on the original (unscaled) instance.
    pub evaluation: Evaluation,
    pub fractional: FractionalSolution,
    pub local: LocalStepResult,
    pub edge_ids: Vec<EdgeId>,
    pub vertex_names: Vec<String>,
}

impl SolveReport {
    pub fn makespan(&self) -> f64 {
        self.evaluation.makespan
    }

    pub fn cost(&self) -> f64 {
        self.evaluation.total_cost
    }

    pub fn promised_makespan(&self) -> f64 {
        self.parameters.makespan_factor * self.target
    }

    /// Checks both promised bounds; returns the violated ones.
    pub fn certify(&self) -> Result<(), Vec<String>> {
        let mut bad = Vec::new();
        if self.makespan() > self.promised_makespan() + CERTIFY_TOL {
            bad.push(format!("makespan {} exceeds {}", self.makespan(), self.promised_makespan()));
        }
        let cost_bound = self.parameters.cost_factor * self.lp_value;
        if self.cost() > cost_bound + CERTIFY_TOL {
            bad.push(format!("cost {} exceeds {}", self.cost(), cost_bound));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    pub fn params_json(&self) -> Value {
        let mut p = match self.parameters.threshold {
            ThresholdFunction::ConstantOne => json!({ "threshold": "constant_one" }),
            ThresholdFunction::StepHalf { alpha } => json!({ "threshold": "step_half", "alpha": alpha }),
            ThresholdFunction::TwoStep { eps } => json!({ "threshold": "two_step", "epsilon": eps }),
            ThresholdFunction::StepThird { alpha } => json!({ "threshold": "step_third", "alpha": alpha }),
            ThresholdFunction::StepAt { a, b } => json!({ "threshold": "step_at", "a": a, "b": b }),
        };
        p["k"] = json!(self.parameters.k);
        match self.config {
            VariantConfig::Gb { gamma } => p["gamma"] = json!(gamma),
            VariantConfig::Gbuh { beta, gamma } | VariantConfig::Gbu { beta, gamma } => {
                p["gamma"] = json!(gamma);
                p["beta"] = json!(beta);
            }
            VariantConfig::Srgb { c } => p["c"] = json!(c),
        }
        p
    }

    pub fn to_json(&self) -> Value {
        let orientation: Vec<Value> = self
            .edge_ids
            .iter()
            .zip(&self.orientation.assignment)
            .map(|(id, v)| json!({ "edge": id.0, "to": self.vertex_names[v.0] }))
            .collect();
        json!({
            "feasible": true,
            "T": self.target,
            "variant": self.config.name(),
            "params": self.params_json(),
            "lp_value": self.lp_value,
            "makespan": self.makespan(),
            "cost": self.cost(),
            "promised": {
                "makespan_factor": self.parameters.makespan_factor,
                "cost_factor": self.parameters.cost_factor,
            },
            "orientation": orientation,
        })
    }
}

/// JSON body reported when a target is rejected.
pub fn infeasible_json(target: f64, cfg: &VariantConfig, reason: &str) -> Value {
    json!({ "feasible": false, "T": target, "variant": cfg.name(), "reason": reason })
}

/// Threshold and `k` actually used on a scaled instance, including the
/// all-small fallback of the unrelated-heavy variant.
pub fn effective_parameters(cfg: &VariantConfig, scaled: &ScaledInstance, opts: &SolveOptions) -> Parameters {
    let mut params = select_parameters(cfg);
    if let VariantConfig::Gbu { gamma, .. } = cfg {
        let all_small = scaled.edges().iter().flat_map(|e| &e.endpoints).all(|ep| ep.p <= 0.75 + gamma);
        if all_small {
            params.threshold = ThresholdFunction::ConstantOne;
        }
    }
    if let Some(k) = opts.lp_k {
        params.k = k;
    }
    params
}

pub fn solve_bicriteria(
    inst: &Instance,
    target: f64,
    cfg: &VariantConfig,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    if matches!(cfg, VariantConfig::Gbu { .. }) && target < 1.0 {
        return Err(SolveError::Infeasible(format!(
            "target {target} is below 1, the assumed lower bound on the optimum"
        )));
    }
    let scaled = scale(inst, target)?;
    let parameters = effective_parameters(cfg, &scaled, opts);
    let r = round_scaled(inst, &scaled, &parameters.threshold, parameters.k, opts.exact)?;
    Ok(SolveReport {
        target,
        config: *cfg,
        parameters,
        lp_value: r.lp_value,
        orientation: r.orientation,
        evaluation: r.evaluation,
        fractional: r.fractional,
        local: r.local,
        edge_ids: inst.edges.iter().map(|e| e.id).collect(),
        vertex_names: inst.vertices.clone(),
    })
}

fn scale(inst: &Instance, target: f64) -> Result<ScaledInstance, SolveError> {
    scale_to_target(inst, target).map_err(|e| match e {
        ScaleError::Infeasible(_) => SolveError::Infeasible(e.to_string()),
        ScaleError::Model(m) => SolveError::Internal(m.to_string()),
    })
}

/// Outcome of rounding one relaxation with one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Rounded {
    pub lp_value: f64,
    pub orientation: Orientation,
    pub evaluation: Evaluation,
    pub fractional: FractionalSolution,
    pub local: LocalStepResult,
}

/// The framework with an explicit threshold and Set size, bypassing the
/// per-variant parameter choice.
pub fn round_with_threshold(
    inst: &Instance,
    target: f64,
    f: &ThresholdFunction,
    k: usize,
    exact: bool,
) -> Result<Rounded, SolveError> {
    round_scaled(inst, &scale(inst, target)?, f, k, exact)
}

fn round_scaled(
    inst: &Instance,
    scaled: &ScaledInstance,
    f: &ThresholdFunction,
    k: usize,
    exact: bool,
) -> Result<Rounded, SolveError> {
    let lp = build_relaxation(scaled, RelaxationSpec::with_sets(k))?;
    let raw = if exact { solve_lp_exact(&lp)?.to_fractional() } else { solve_lp(&lp)? };
    let lp_value = raw.objective_value;
    let fractional = sanitize_solution(scaled, &raw);
    let (orientation, local) =
        framework_round_detailed(scaled, &fractional, f).map_err(|e| SolveError::Internal(e.to_string()))?;
    let evaluation = evaluate(inst, &orientation).map_err(|e| SolveError::Internal(e.to_string()))?;
    Ok(Rounded { lp_value, orientation, evaluation, fractional, local })
}

/// `[max_e min_u p(e,u), Σ_e max_u p(e,u)]`, raised to at least 1 for the
/// unrelated-heavy variant.
pub fn makespan_bracket(inst: &Instance, cfg: &VariantConfig) -> (f64, f64) {
    let mut lo = inst.edges.iter().map(Edge::min_weight).fold(0.0, f64::max);
    let mut hi: f64 = inst.edges.iter().map(Edge::max_weight).sum();
    if matches!(cfg, VariantConfig::Gbu { .. }) {
        lo = lo.max(1.0);
    }
    hi = hi.max(lo);
    if hi <= 0.0 {
        (f64::MIN_POSITIVE, f64::MIN_POSITIVE)
    } else {
        (lo, hi)
    }
}

/// Smallest target (within `rel_tol`) at which the variant's relaxation is
/// feasible, with the solve at that target.
pub fn binary_search_makespan(
    inst: &Instance,
    cfg: &VariantConfig,
    rel_tol: f64,
    opts: &SolveOptions,
) -> Result<(f64, SolveReport), SolveError> {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    let (mut lo, mut hi) = makespan_bracket(inst, cfg);
    if lo > 0.0 {
        match solve_bicriteria(inst, lo, cfg, opts) {
            Ok(r) => return Ok((lo, r)),
            Err(SolveError::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut best = solve_bicriteria(inst, hi, cfg, opts)?;
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        match solve_bicriteria(inst, mid, cfg, opts) {
            Ok(r) => {
                hi = mid;
                best = r;
            }
            Err(SolveError::Infeasible(_)) => lo = mid,
            Err(e) => return Err(e),
        }
    }
    Ok((hi, best))
}

/// Distinct processing times in descending order.
pub fn distinct_weights(inst: &Instance) -> Vec<f64> {
    let mut w: Vec<f64> = inst.edges.iter().flat_map(|e| e.endpoints.iter().map(|ep| ep.p)).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    w.dedup();
    w
}

fn fresh_name(inst: &Instance, base: &str) -> String {
    let mut name = base.to_string();
    while inst.vertices.iter().any(|v| *v == name) {
        name.push('\'');
    }
    name
}

/// One reduction round at level `w`: entries above `w` are removed, the
/// original jobs become light, and a heavy job with weights `(w + ε, w/β)`
/// on two fresh machines is appended. `None` if some job loses every machine.
pub fn reduction_iteration_instance(gap: &Instance, beta: f64, eps: f64, w: f64) -> Option<Instance> {
    let mut inst = gap.clone();
    for e in &mut inst.edges {
        e.endpoints.retain(|ep| ep.p <= w);
        if e.endpoints.is_empty() {
            return None;
        }
        e.class = Some(EdgeClass::Light);
    }
    let i1 = fresh_name(gap, "aux1");
    let i2 = fresh_name(gap, "aux2");
    let n = inst.vertices.len();
    inst.vertices.push(i1);
    inst.vertices.push(i2);
    let id = EdgeId(inst.edges.last().map_or(0, |e| e.id.0 + 1));
    inst.edges.push(Edge {
        id,
        endpoints: vec![
            Endpoint { vertex: crate::model::VertexId(n), p: w + eps, c: 0.0 },
            Endpoint { vertex: crate::model::VertexId(n + 1), p: w / beta, c: 0.0 },
        ],
        class: Some(EdgeClass::Heavy),
    });
    inst.meta = None;
    Some(inst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub orientation: Orientation,
    /// Measured on the input instance.
    pub evaluation: Evaluation,
    /// Level `w_ℓ` whose round produced the result.
    pub level: f64,
    pub rounds_solved: usize,
}

/// Runs the inner solver once per distinct weight level and keeps the
/// schedule with the smallest makespan. Each round's instance is divided by
/// its level so the optimum is at least 1, as the inner solver assumes.
pub fn gap_reduction(
    gap: &Instance,
    beta: f64,
    eps: f64,
    inner: &VariantConfig,
    rel_tol: f64,
    opts: &SolveOptions,
) -> Result<ReductionResult, SolveError> {
    if !(beta > 0.0 && beta <= 1.0 && eps > 0.0) {
        return Err(SolveError::Internal(format!("need 0 < beta <= 1 and eps > 0, got {beta}, {eps}")));
    }
    let m = gap.edges.len();
    let mut best: Option<ReductionResult> = None;
    let mut rounds = 0;
    for w in distinct_weights(gap) {
        if w <= 0.0 {
            continue;
        }
        let Some(round) = reduction_iteration_instance(gap, beta, eps, w) else { continue };
        let normalized = round.scaled_weights(1.0 / w);
        let report = match binary_search_makespan(&normalized, inner, rel_tol, opts) {
            Ok((_, r)) => r,
            Err(SolveError::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        rounds += 1;
        let orientation = Orientation { assignment: report.orientation.assignment[..m].to_vec() };
        let evaluation = evaluate(gap, &orientation).map_err(|e| SolveError::Internal(e.to_string()))?;
        if best.as_ref().map_or(true, |b| evaluation.makespan < b.evaluation.makespan) {
            best = Some(ReductionResult { orientation, evaluation, level: w, rounds_solved: 0 });
        }
    }
    let mut best = best.ok_or_else(|| SolveError::Infeasible("no reduction round was solvable".into()))?;
    best.rounds_solved = rounds;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;

    #[test]
    fn gb_parameter_branches() {
        let p = select_parameters(&VariantConfig::gb(0.25).unwrap());
        assert_eq!(p.threshold, ThresholdFunction::StepHalf { alpha: 1.0 });
        assert_eq!((p.k, p.makespan_factor, p.cost_factor), (0, 2.0, 1.0));
        let p = select_parameters(&VariantConfig::gb(1.0 / 12.0).unwrap());
        assert!(matches!(p.threshold, ThresholdFunction::StepHalf { alpha } if (alpha - 2.0 / 3.0).abs() < 1e-15));
        let p = select_parameters(&VariantConfig::gb(0.07).unwrap());
        match p.threshold {
            ThresholdFunction::TwoStep { eps } => assert!((eps - (1.0 / 6.0 - 0.14)).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(p.k, 3);
        assert!((p.cost_factor - p.threshold.cost_factor()).abs() < 1e-12);
    }

    #[test]
    fn config_ranges() {
        assert!(VariantConfig::gb(0.05).is_err());
        assert!(VariantConfig::gb(0.3).is_err());
        assert!(VariantConfig::gbuh(0.7, 0.1).is_err());
        assert!(VariantConfig::gbuh(0.7, 0.15).is_ok());
        assert!(VariantConfig::gbu(0.3, 0.2).is_err());
        assert!(VariantConfig::gbu(0.45, 0.07).is_err());
        assert!(VariantConfig::srgb(0.9).is_err());
    }

    #[test]
    fn cubic_root_at_one() {
        let a = cubic_root(1.0);
        assert!((a - 2.0 / 3.0).abs() < 1e-9);
        let b = srgb_breakpoint(1.0, a);
        assert!((b - 1.0 / 3.0).abs() < 1e-9);
        for t in srgb_load_terms(1.0, a, b) {
            assert!((t - 11.0 / 6.0).abs() < 1e-9);
        }
    }

    #[test]
    fn single_edge_binary_search() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 0.0), (v, 0.0)], 5.0);
        let (t, r) = binary_search_makespan(&b.build(), &VariantConfig::gb(0.25).unwrap(), 1e-6, &SolveOptions::default()).unwrap();
        assert_eq!(t, 5.0);
        assert_eq!(r.makespan(), 5.0);
    }

    #[test]
    fn parallel_pair_binary_search() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 0.0), (v, 0.0)], 1.0);
        b.related_edge(&[(u, 0.0), (v, 0.0)], 1.0);
        let (t, r) = binary_search_makespan(&b.build(), &VariantConfig::gb(1.0 / 12.0).unwrap(), 1e-6, &SolveOptions::default()).unwrap();
        assert!((t - 1.0).abs() < 1e-6);
        assert!(r.certify().is_ok());
    }

    #[test]
    fn gbu_rejects_small_targets() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        b.self_loop(u, 0.1);
        let r = solve_bicriteria(&b.build(), 0.5, &VariantConfig::gbu(0.5, 0.25).unwrap(), &SolveOptions::default());
        assert!(matches!(r, Err(SolveError::Infeasible(_))));
    }

    #[test]
    fn reduction_round_weights() {
        let mut b = InstanceBuilder::new();
        let m0 = b.vertex("m0");
        let m1 = b.vertex("m1");
        b.edge(vec![Endpoint { vertex: m0, p: 1.0, c: 0.0 }, Endpoint { vertex: m1, p: 0.4, c: 0.0 }], None);
        let gap = b.build();
        assert_eq!(distinct_weights(&gap), vec![1.0, 0.4]);
        let r = reduction_iteration_instance(&gap, 0.5, 0.01, 1.0).unwrap();
        let j = r.edges.last().unwrap();
        assert_eq!((j.endpoints[0].p, j.endpoints[1].p), (1.01, 2.0));
        let r = reduction_iteration_instance(&gap, 1.0, 0.01, 0.4).unwrap();
        assert_eq!(r.edges[0].endpoints.len(), 1);
        let j = r.edges.last().unwrap();
        assert_eq!(j.endpoints[1].p, 0.4);
    }
}
