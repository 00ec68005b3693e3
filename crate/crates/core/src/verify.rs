//! Reproducible checks of the guarantees and gap constructions, one per
//! acceptance criterion, plus per-instance certification for the CLI.

use std::fmt;

use serde_json::{json, Value};

use crate::drivers::{
    binary_search_makespan, cubic, cubic_root, gap_reduction, round_with_threshold, select_parameters,
    srgb_breakpoint, srgb_load_terms, SolveError, SolveOptions, VariantConfig,
};
use crate::lab::{
    gen_gbu_cycle, gen_gbu_paths, gen_gbu_paths_sized, gen_lb_cost, gen_random, gen_tightness_a, gen_tightness_b,
    Family, GenError, Sizes,
};
use crate::lp::{build_relaxation, sanitize_solution, solve_lp, solve_lp_exact, LpError, RelaxationSpec};
use crate::model::{evaluate, scale_to_target, Instance, Orientation};
use crate::oracle::{min_makespan, oracle, DEFAULT_CAP};
use crate::st::st_round;
use crate::threshold::{two_step_eps_max, ThresholdFunction};

pub const CRITERIA: u8 = 11;
const TOL: f64 = 1e-6;
/// Enough for the 20-vertex cycle: `2^20 · 20` orientations.
const CYCLE_CAP: u128 = 30_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// Failed checks first, then informational notes.
    pub details: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2}: {verdict} — {} ({} checks)", self.id, self.title, self.checks)?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }

    fn note(&mut self, what: String) {
        self.notes.push(what);
    }

    fn finish(self, id: u8, title: &'static str) -> CriterionReport {
        let passed = self.failures.is_empty();
        let hidden = self.failures.iter().filter(|f| f.is_empty()).count();
        let mut details: Vec<String> =
            self.failures.into_iter().filter(|f| !f.is_empty()).map(|f| format!("failed: {f}")).collect();
        if hidden > 0 {
            details.push(format!("failed: … and {hidden} more"));
        }
        details.extend(self.notes.into_iter().map(|n| format!("note: {n}")));
        CriterionReport { id, title, passed, checks: self.checks, details }
    }
}

fn gen(r: Result<Instance, GenError>, c: &mut Checker) -> Option<Instance> {
    r.map_err(|e| c.fail(format!("generator: {e}"))).ok()
}

/// Value of `LP_k` at `target`; `None` when infeasible.
pub fn lp_value(inst: &Instance, target: f64, k: usize, exact: bool) -> Result<Option<f64>, LpError> {
    let Ok(scaled) = scale_to_target(inst, target) else { return Ok(None) };
    let lp = build_relaxation(&scaled, RelaxationSpec::with_sets(k))?;
    let r = if exact { solve_lp_exact(&lp).map(|s| s.to_fractional().objective_value) } else { solve_lp(&lp).map(|s| s.objective_value) };
    match r {
        Ok(v) => Ok(Some(v)),
        Err(LpError::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

pub const GB_GAMMAS: [f64; 4] = [0.07, 1.0 / 12.0, 0.15, 0.25];
pub const GBUH_BETAS: [f64; 3] = [0.3, 0.5, 0.7];
pub const SRGB_CS: [f64; 4] = [2.0, 5.0, 10.0, 1e4];
const TIGHT_ALPHAS: [f64; 3] = [2.0 / 3.0, 0.75, 0.9];
const LB_GAMMAS: [f64; 3] = [0.0, 0.1, 0.2];
const GBUH_SIZES: Sizes = Sizes { max_vertices: 6, max_edges: 8 };
const GAP_SIZES: Sizes = Sizes { max_vertices: 4, max_edges: 7 };
const TOY_GAP_SIZES: Sizes = Sizes { max_vertices: 4, max_edges: 5 };

/// Random guarantee sweep: makespan against `T`, cost against `C(T)` (or the
/// LP value when `against_oracle` is false).
fn guarantee_sweep(c: &mut Checker, family: Family, seeds: u64, sizes: Sizes, cfg: VariantConfig, against_oracle: bool) {
    let opts = SolveOptions::default();
    for seed in 0..seeds {
        let Some(inst) = gen(gen_random(family, seed, sizes), c) else { continue };
        let (t, r) = match binary_search_makespan(&inst, &cfg, 1e-6, &opts) {
            Ok(x) => x,
            Err(e) => {
                c.fail(format!("{} seed {seed}: {e}", cfg.name()));
                continue;
            }
        };
        let bound = r.parameters.makespan_factor * t + TOL;
        c.check(r.makespan() <= bound, || {
            format!("{} seed {seed} param {}: makespan {} > {bound}", cfg.name(), cfg.param(), r.makespan())
        });
        let base = if against_oracle {
            match oracle(&inst, t, DEFAULT_CAP) {
                Ok(o) => o.cost_at_target,
                Err(e) => {
                    c.fail(format!("seed {seed}: {e}"));
                    continue;
                }
            }
        } else {
            Some(r.lp_value)
        };
        if let Some(base) = base {
            let bound = r.parameters.cost_factor * base + TOL;
            c.check(r.cost() <= bound, || {
                format!("{} seed {seed} param {}: cost {} > {bound}", cfg.name(), cfg.param(), r.cost())
            });
        }
    }
}

pub fn criterion_1() -> CriterionReport {
    let mut c = Checker::default();
    for g in GB_GAMMAS {
        guarantee_sweep(&mut c, Family::Gb, 200, Sizes::default(), VariantConfig::gb(g).unwrap(), true);
    }
    c.finish(1, "graph balancing guarantee sweep")
}

/// Both edges of the fractional side pulled onto `u`.
fn all_to_first(inst: &Instance) -> Orientation {
    Orientation { assignment: inst.edges.iter().map(|e| e.endpoints[0].vertex).collect() }
}

pub fn criterion_2() -> CriterionReport {
    let mut c = Checker::default();
    let eps = 1e-3;
    for alpha in TIGHT_ALPHAS {
        let f = ThresholdFunction::step_half(alpha).unwrap();
        if let Some(a) = gen(gen_tightness_a(alpha, eps), &mut c) {
            match round_with_threshold(&a, 1.0, &f, 0, true) {
                Ok(r) => {
                    let want = 1.5 + 0.5 * alpha - 0.5 * eps;
                    c.check((r.evaluation.makespan - want).abs() <= 1e-9, || {
                        format!("(a) alpha {alpha}: makespan {} != {want}", r.evaluation.makespan)
                    });
                    c.check((r.evaluation.total_cost - 1.0).abs() <= 1e-9, || {
                        format!("(a) alpha {alpha}: cost {}", r.evaluation.total_cost)
                    });
                    c.check(r.lp_value <= alpha + 2.0 * eps + 1e-9, || {
                        format!("(a) alpha {alpha}: lp value {} > {}", r.lp_value, alpha + 2.0 * eps)
                    });
                }
                Err(e) => c.fail(format!("(a) alpha {alpha}: {e}")),
            }
        }
        if let Some(b) = gen(gen_tightness_b(alpha, eps), &mut c) {
            match round_with_threshold(&b, 1.0, &f, 0, true) {
                Ok(r) => {
                    let measured = evaluate(&b, &all_to_first(&b)).unwrap().makespan;
                    let want = 2.5 - alpha - eps;
                    c.check((r.evaluation.makespan - measured).abs() <= TOL, || {
                        format!("(b) alpha {alpha}: makespan {} != measured {measured}", r.evaluation.makespan)
                    });
                    c.check((measured - want).abs() <= TOL, || format!("(b) alpha {alpha}: measured {measured} != {want}"));
                    c.check((r.evaluation.total_cost - 1.0).abs() <= 1e-9, || {
                        format!("(b) alpha {alpha}: cost {}", r.evaluation.total_cost)
                    });
                }
                Err(e) => c.fail(format!("(b) alpha {alpha}: {e}")),
            }
        }
    }
    c.finish(2, "tightness of the single-step threshold")
}

pub fn criterion_3() -> CriterionReport {
    let mut c = Checker::default();
    let eps = 0.01;
    for gamma in LB_GAMMAS {
        let Some(inst) = gen(gen_lb_cost(gamma, eps, 3), &mut c) else { continue };
        let want = 0.75 + gamma + 2.0 * eps;
        let lp = match lp_value(&inst, 1.0, 3, true) {
            Ok(Some(v)) => {
                c.check((v - want).abs() <= 1e-9, || format!("gamma {gamma}: lp value {v} != {want}"));
                Some(v)
            }
            Ok(None) => {
                c.fail(format!("gamma {gamma}: relaxation infeasible at T = 1"));
                None
            }
            Err(e) => {
                c.fail(format!("gamma {gamma}: {e}"));
                None
            }
        };
        match oracle(&inst, 1.75 + gamma, DEFAULT_CAP) {
            Ok(o) => {
                let cost = o.cost_at_target;
                c.check(cost.map_or(true, |x| x >= 1.0 - 1e-9), || {
                    format!("gamma {gamma}: orientation with makespan <= {} costs {cost:?}", 1.75 + gamma)
                });
                if let (Some(ct), Some(lp)) = (cost, lp) {
                    c.note(format!("gamma {gamma}: C({}) = {ct}, ratio to lp value {:.6}", 1.75 + gamma, ct / lp));
                }
            }
            Err(e) => c.fail(format!("gamma {gamma}: {e}")),
        }
    }
    c.finish(3, "cost lower bound instance")
}

/// Two-step parameters forced at `γ`, for comparing the two branches.
fn two_step_branch(gamma: f64) -> (ThresholdFunction, f64, f64) {
    let f = ThresholdFunction::two_step(1.0 / 6.0 - 2.0 * gamma).expect("eps in range");
    (f, 1.75 + gamma, f.cost_factor())
}

pub fn criterion_4() -> CriterionReport {
    let mut c = Checker::default();
    let g = 1.0 / 12.0;
    let p = select_parameters(&VariantConfig::gb(g).unwrap());
    let (_, m2, c2) = two_step_branch(g);
    c.check(matches!(p.threshold, ThresholdFunction::StepHalf { .. }), || format!("branch at 1/12: {}", p.threshold));
    for (name, m, k) in [("step_half", p.makespan_factor, p.cost_factor), ("two_step", m2, c2)] {
        c.check((m - 11.0 / 6.0).abs() <= 1e-12 && (k - 1.5).abs() <= 1e-12, || {
            format!("{name} at 1/12: factors ({m}, {k})")
        });
    }
    let g = 1.0 / 12.0 - (33f64.sqrt() / 4.0 - 17.0 / 12.0) / 2.0;
    let p = select_parameters(&VariantConfig::gb(g).unwrap());
    match p.threshold {
        ThresholdFunction::TwoStep { eps } => {
            c.check(eps <= two_step_eps_max() + 1e-15, || format!("eps {eps} > {}", two_step_eps_max()));
            let want = 1.0 / (2.0 * g + 0.5);
            c.check((p.threshold.cost_factor() - want).abs() <= 1e-12, || {
                format!("cost factor {} != {want}", p.threshold.cost_factor())
            });
            c.check((p.cost_factor - want).abs() <= 1e-12, || format!("promised cost {} != {want}", p.cost_factor));
        }
        other => c.fail(format!("gamma {g}: expected the two-step branch, got {other}")),
    }
    c.finish(4, "continuity of the stitched tradeoff curve")
}

pub fn criterion_5() -> CriterionReport {
    let mut c = Checker::default();
    let a = cubic_root(1.0);
    let b = srgb_breakpoint(1.0, a);
    c.check((a - 2.0 / 3.0).abs() <= 1e-9, || format!("root at c = 1: {a}"));
    c.check((b - 1.0 / 3.0).abs() <= 1e-9, || format!("breakpoint at c = 1: {b}"));
    for t in srgb_load_terms(1.0, a, b) {
        c.check((t - 11.0 / 6.0).abs() <= 1e-9, || format!("load term {t} != 11/6"));
    }
    for cc in SRGB_CS {
        let a = cubic_root(cc);
        c.check(cubic(cc, a).abs() <= 1e-10, || format!("c {cc}: |g(a)| = {}", cubic(cc, a).abs()));
        c.check((0.5..=1.0 - 0.25 / cc).contains(&a), || format!("c {cc}: root {a} outside its bracket"));
        guarantee_sweep(&mut c, Family::Srgb { c: cc }, 100, Sizes::default(), VariantConfig::srgb(cc).unwrap(), false);
    }
    c.finish(5, "semi-related parameters and guarantee")
}

pub fn criterion_6() -> CriterionReport {
    let mut c = Checker::default();
    for beta in GBUH_BETAS {
        let gamma = VariantConfig::light_gamma_min(beta);
        let cfg = VariantConfig::gbuh(beta, gamma).unwrap();
        guarantee_sweep(&mut c, Family::Gbuh { beta }, 100, GBUH_SIZES, cfg, true);
    }
    c.finish(6, "light-hyperedge guarantee")
}

fn paths_gap(c: &mut Checker, inst: &Instance, eps: f64, label: &str) {
    match lp_value(inst, 1.0, 3, false) {
        Ok(v) => c.check(v.is_some(), || format!("{label}: relaxation with sets of size 3 infeasible at T = 1")),
        Err(e) => c.fail(format!("{label}: {e}")),
    }
    let want = 11.0 / 6.0 - 6.0 * eps;
    match min_makespan(inst, DEFAULT_CAP) {
        Ok(m) => {
            c.check(m >= want - 1e-9, || format!("{label}: min makespan {m} < {want}"));
            c.note(format!("{label}: min makespan {m}, bound {want}"));
        }
        Err(e) => c.fail(format!("{label}: {e}")),
    }
}

pub fn criterion_7() -> CriterionReport {
    let mut c = Checker::default();
    for eps in [0.25, 1.0 / 3.0] {
        if let Some(inst) = gen(gen_gbu_paths(eps, 3), &mut c) {
            paths_gap(&mut c, &inst, eps, &format!("eps {eps}"));
        }
    }
    // The same construction at a parameter where every weight is valid.
    let eps = 1.0 / 12.0;
    match gen_gbu_paths_sized(2, 6, eps, 3) {
        Ok(inst) => {
            let mut side = Checker::default();
            paths_gap(&mut side, &inst, eps, "2 paths of 6 at eps 1/12");
            let verdict = if side.failures.is_empty() { "holds" } else { "fails" };
            c.note(format!("supplementary 2x6 instance at eps 1/12 {verdict}: {:?}", side.notes));
        }
        Err(e) => c.note(format!("supplementary instance: {e}")),
    }
    c.finish(7, "unrelated-heavy makespan gap")
}

pub fn cycle_instance() -> Result<Instance, GenError> {
    gen_gbu_cycle(1.0 / 12.0, 0.2, 3)
}

pub fn criterion_8() -> CriterionReport {
    let mut c = Checker::default();
    let gamma = 1.0 / 12.0;
    if let Some(inst) = gen(cycle_instance(), &mut c) {
        let g1 = gamma / (1.0 - 0.2);
        let want = 2.0 * g1 + 0.5;
        match lp_value(&inst, 1.0, 3, false) {
            Ok(Some(v)) => c.check((v - want).abs() <= 1e-9, || format!("lp value {v} != {want}")),
            Ok(None) => c.fail("relaxation infeasible at T = 1".into()),
            Err(e) => c.fail(e.to_string()),
        }
        match oracle(&inst, 1.75 + gamma, CYCLE_CAP) {
            Ok(o) => {
                let cost = o.cost_at_target;
                c.check(cost.map_or(true, |x| x >= 1.0 - 1e-9), || {
                    let m = o.cost_argmin.as_ref().map(|a| evaluate(&inst, a).unwrap().makespan);
                    format!("orientation with makespan {m:?} <= {} has cost {cost:?}", 1.75 + gamma)
                });
                c.note(format!("min makespan {}", o.min_makespan));
            }
            Err(e) => c.fail(e.to_string()),
        }
    }
    c.finish(8, "unrelated-heavy cost gap")
}

pub fn criterion_9() -> CriterionReport {
    let mut c = Checker::default();
    for seed in 0..200 {
        let Some(inst) = gen(gen_random(Family::Gap, seed, GAP_SIZES), &mut c) else { continue };
        let t = match min_makespan(&inst, DEFAULT_CAP) {
            Ok(t) => t,
            Err(e) => {
                c.fail(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let run = || -> Result<(f64, f64, f64), String> {
            let scaled = scale_to_target(&inst, t).map_err(|e| e.to_string())?;
            let lp = build_relaxation(&scaled, RelaxationSpec::plain()).map_err(|e| e.to_string())?;
            let raw = solve_lp(&lp).map_err(|e| e.to_string())?;
            let x = sanitize_solution(&scaled, &raw);
            let o = st_round(&scaled, &x).map_err(|e| e.to_string())?;
            let ev = evaluate(&inst, &o).map_err(|e| e.to_string())?;
            Ok((raw.objective_value, ev.makespan, ev.total_cost))
        };
        match run() {
            Ok((lp, m, cost)) => {
                c.check(m <= 2.0 * t + TOL, || format!("seed {seed}: makespan {m} > 2 * {t}"));
                c.check(cost <= lp + 1e-9, || format!("seed {seed}: cost {cost} > lp value {lp}"));
            }
            Err(e) => c.fail(format!("seed {seed}: {e}")),
        }
    }
    c.finish(9, "matching-based rounding baseline")
}

/// Every instance used by criteria 1–9, with the targets to test at.
pub fn soundness_corpus() -> Vec<(String, Instance, Vec<f64>)> {
    let mut out = Vec::new();
    let mut random = |family: Family, seeds: u64, sizes: Sizes| {
        for seed in 0..seeds {
            if let Ok(inst) = gen_random(family, seed, sizes) {
                if let Ok(m) = min_makespan(&inst, DEFAULT_CAP) {
                    out.push((format!("{} seed {seed}", family.name()), inst, vec![m, 0.9 * m]));
                }
            }
        }
    };
    random(Family::Gb, 200, Sizes::default());
    for cc in SRGB_CS {
        random(Family::Srgb { c: cc }, 100, Sizes::default());
    }
    for beta in GBUH_BETAS {
        random(Family::Gbuh { beta }, 100, GBUH_SIZES);
    }
    random(Family::Gap, 200, GAP_SIZES);
    for alpha in TIGHT_ALPHAS {
        out.push((format!("tightness-a {alpha}"), gen_tightness_a(alpha, 1e-3).unwrap(), vec![1.0]));
        out.push((format!("tightness-b {alpha}"), gen_tightness_b(alpha, 1e-3).unwrap(), vec![1.0]));
    }
    for gamma in LB_GAMMAS {
        out.push((format!("lb-cost {gamma}"), gen_lb_cost(gamma, 0.01, 3).unwrap(), vec![1.0, 1.75 + gamma]));
    }
    if let Ok(inst) = gen_gbu_paths_sized(2, 6, 1.0 / 12.0, 3) {
        out.push(("gbu-paths 2x6".into(), inst, vec![1.0]));
    }
    out
}

pub fn criterion_10() -> CriterionReport {
    let mut c = Checker::default();
    let mut corpus = soundness_corpus();
    if let Ok(inst) = cycle_instance() {
        corpus.push(("gbu-cycle".into(), inst, vec![1.0, 1.75 + 1.0 / 12.0]));
    }
    for (name, inst, targets) in &corpus {
        let cap = if name == "gbu-cycle" { CYCLE_CAP } else { DEFAULT_CAP };
        for &t in targets {
            let (plain, sets) = match (lp_value(inst, t, 0, false), lp_value(inst, t, 3, false)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    c.fail(format!("{name} at {t}: {e}"));
                    continue;
                }
            };
            c.check(sets.is_none() || plain.is_some(), || format!("{name} at {t}: sets feasible, plain infeasible"));
            let exact = match oracle(inst, t, cap) {
                Ok(o) => o.cost_at_target,
                Err(e) => {
                    c.fail(format!("{name} at {t}: {e}"));
                    continue;
                }
            };
            if let Some(ct) = exact {
                for (k, v) in [(0, plain), (3, sets)] {
                    c.check(v.is_some_and(|v| v <= ct + 1e-9), || format!("{name} at {t}: k {k} value {v:?} vs C(T) {ct}"));
                }
            }
        }
    }
    c.note(format!("{} instances", corpus.len()));
    c.finish(10, "relaxation soundness against the oracle")
}

pub fn criterion_11() -> CriterionReport {
    let mut c = Checker::default();
    let (beta, gamma, eps, rel_tol) = (1.0, 0.25, 0.01, 1e-6);
    let inner = VariantConfig::gbu(beta, gamma).unwrap();
    for seed in 0..20 {
        let Some(inst) = gen(gen_random(Family::Gap, seed, TOY_GAP_SIZES), &mut c) else { continue };
        let opt = match min_makespan(&inst, DEFAULT_CAP) {
            Ok(m) => m,
            Err(e) => {
                c.fail(format!("seed {seed}: {e}"));
                continue;
            }
        };
        match gap_reduction(&inst, beta, eps, &inner, rel_tol, &SolveOptions::default()) {
            Ok(r) => {
                let bound = (1.75 + gamma) * (opt + eps) * (1.0 + rel_tol) + TOL;
                let m = r.evaluation.makespan;
                c.check(m <= bound, || format!("seed {seed}: makespan {m} > {bound} (opt {opt})"));
            }
            Err(e) => c.fail(format!("seed {seed}: {e}")),
        }
    }
    c.finish(11, "reduction from general assignment")
}

pub fn criterion(id: u8) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=CRITERIA).filter_map(criterion).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CertifyError {
    #[error("unknown instance family {0:?}")]
    UnknownName(String),
    #[error("missing parameter {0:?}")]
    MissingParam(&'static str),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Named structured family with its parameters looked up in `params`.
pub fn generate_named(name: &str, params: &serde_json::Map<String, Value>) -> Result<Instance, CertifyError> {
    let get = |k: &'static str| params.get(k).and_then(Value::as_f64).ok_or(CertifyError::MissingParam(k));
    let k = || get("k").map(|v| v as usize);
    Ok(match name {
        "tightness-a" => gen_tightness_a(get("alpha")?, get("epsilon")?)?,
        "tightness-b" => gen_tightness_b(get("alpha")?, get("epsilon")?)?,
        "lb-cost" => gen_lb_cost(get("gamma")?, get("epsilon")?, k()?)?,
        "gbu-paths" => match (get("paths"), get("len")) {
            (Ok(p), Ok(l)) => gen_gbu_paths_sized(p as usize, l as usize, get("epsilon")?, k()?)?,
            _ => gen_gbu_paths(get("epsilon")?, k()?)?,
        },
        "gbu-cycle" => gen_gbu_cycle(get("gamma")?, get("epsilon")?, k()?)?,
        other => return Err(CertifyError::UnknownName(other.to_string())),
    })
}

/// Rounds a named instance at `T = 1` with the threshold its family targets
/// and reports achieved values next to the predicted ones.
pub fn certify_named(name: &str, params: &serde_json::Map<String, Value>) -> Result<Value, CertifyError> {
    let inst = generate_named(name, params)?;
    let num = |k: &str| params.get(k).and_then(Value::as_f64).unwrap_or(0.0);
    let (alpha, eps, gamma) = (num("alpha"), num("epsilon"), num("gamma"));
    let (f, predicted, makespan_probe) = match name {
        "tightness-a" => (
            ThresholdFunction::step_half(alpha).map_err(|_| CertifyError::MissingParam("alpha"))?,
            json!({ "makespan": 1.5 + 0.5 * alpha - 0.5 * eps, "cost": 1.0, "lp_value_at_most": alpha + 2.0 * eps }),
            None,
        ),
        "tightness-b" => (
            ThresholdFunction::step_half(alpha).map_err(|_| CertifyError::MissingParam("alpha"))?,
            json!({ "makespan": 2.5 - alpha - eps, "cost": 1.0 }),
            None,
        ),
        "lb-cost" => (
            select_parameters(&VariantConfig::Gb { gamma: gamma.max(VariantConfig::gb_gamma_min()) }).threshold,
            json!({ "lp_value": 0.75 + gamma + 2.0 * eps, "cost_at_target": 1.0 }),
            Some(1.75 + gamma),
        ),
        "gbu-paths" => (
            select_parameters(&VariantConfig::Gbu { beta: 0.5, gamma: 1.0 / 12.0 }).threshold,
            json!({ "min_makespan_at_least": 11.0 / 6.0 - 6.0 * eps }),
            None,
        ),
        _ => {
            let g1 = gamma / (1.0 - eps);
            (
                select_parameters(&VariantConfig::Gbu { beta: 0.5, gamma }).threshold,
                json!({ "lp_value": 2.0 * g1 + 0.5, "cost_at_target": 1.0 }),
                Some(1.75 + gamma),
            )
        }
    };
    // The tightness pair targets the plain relaxation; the others use sets of size 3.
    let k = if name.starts_with("tightness") { 0 } else { 3 };
    let r = round_with_threshold(&inst, 1.0, &f, k, false)?;
    let probe = makespan_probe.unwrap_or(1.0);
    let exact = oracle(&inst, probe, CYCLE_CAP).ok();
    Ok(json!({
        "instance": name,
        "threshold": f.to_string(),
        "achieved": {
            "lp_value": r.lp_value,
            "makespan": r.evaluation.makespan,
            "cost": r.evaluation.total_cost,
            "oracle_min_makespan": exact.as_ref().map(|o| o.min_makespan),
            "oracle_target": probe,
            "cost_at_target": exact.as_ref().and_then(|o| o.cost_at_target),
            "makespan_ratio": exact.as_ref().map(|o| r.evaluation.makespan / o.min_makespan),
            "cost_ratio": (r.lp_value > 0.0).then(|| r.evaluation.total_cost / r.lp_value),
        },
        "predicted": predicted,
    }))
}
