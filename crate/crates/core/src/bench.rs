//! Seeded sweeps over random instances, written as CSV.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::drivers::{binary_search_makespan, SolveError, SolveOptions, VariantConfig};
use crate::lab::{gen_random, Family, GenError, Sizes};
use crate::oracle::{oracle, DEFAULT_CAP};

pub const CSV_HEADER: &str = "seed,param,T,lp_value,makespan,cost,makespan_ratio,cost_ratio,\
promised_makespan,promised_cost,oracle_makespan,oracle_cost";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// One configuration per grid point; all must share a variant.
    pub grid: Vec<VariantConfig>,
    pub seeds: u64,
    pub first_seed: u64,
    pub sizes: Sizes,
    pub rel_tol: f64,
    /// Skip the oracle when the search space is above this.
    pub oracle_cap: u128,
    pub jobs: usize,
    pub options: SolveOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            grid: Vec::new(),
            seeds: 10,
            first_seed: 0,
            sizes: Sizes::default(),
            rel_tol: 1e-6,
            oracle_cap: DEFAULT_CAP,
            jobs: 1,
            options: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub seed: u64,
    pub param: f64,
    pub target: f64,
    pub lp_value: f64,
    pub makespan: f64,
    pub cost: f64,
    pub promised_makespan: f64,
    pub promised_cost: f64,
    pub oracle_makespan: Option<f64>,
    /// `C(T)`; `None` when the oracle was skipped or `C(T) = ∞`.
    pub oracle_cost: Option<f64>,
}

impl BenchRow {
    pub fn makespan_ratio(&self) -> f64 {
        self.makespan / self.target
    }

    /// Cost over `C(T)` when the oracle ran, otherwise over the LP value.
    pub fn cost_ratio(&self) -> Option<f64> {
        let base = self.oracle_cost.unwrap_or(self.lp_value);
        (base > 0.0).then(|| self.cost / base)
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.param,
            self.target,
            self.lp_value,
            self.makespan,
            self.cost,
            self.makespan_ratio(),
            opt(self.cost_ratio()),
            self.promised_makespan,
            self.promised_cost,
            opt(self.oracle_makespan),
            opt(self.oracle_cost),
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("seed {seed}: {source}")]
    Generate { seed: u64, source: GenError },
    #[error("seed {seed}, param {param}: {source}")]
    Solve { seed: u64, param: f64, source: SolveError },
    #[error("could not build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Random family matching a variant.
pub fn family_for(cfg: &VariantConfig) -> Family {
    match *cfg {
        VariantConfig::Gb { .. } => Family::Gb,
        VariantConfig::Gbuh { beta, .. } => Family::Gbuh { beta },
        VariantConfig::Gbu { beta, .. } => Family::Gbu { beta },
        VariantConfig::Srgb { c } => Family::Srgb { c },
    }
}

pub fn bench_point(seed: u64, cfg: &VariantConfig, bc: &BenchConfig) -> Result<BenchRow, BenchError> {
    let inst = gen_random(family_for(cfg), seed, bc.sizes).map_err(|source| BenchError::Generate { seed, source })?;
    let (target, report) = binary_search_makespan(&inst, cfg, bc.rel_tol, &bc.options)
        .map_err(|source| BenchError::Solve { seed, param: cfg.param(), source })?;
    let exact = oracle(&inst, target, bc.oracle_cap).ok();
    Ok(BenchRow {
        seed,
        param: cfg.param(),
        target,
        lp_value: report.lp_value,
        makespan: report.makespan(),
        cost: report.cost(),
        promised_makespan: report.parameters.makespan_factor,
        promised_cost: report.parameters.cost_factor,
        oracle_makespan: exact.as_ref().map(|r| r.min_makespan),
        oracle_cost: exact.and_then(|r| r.cost_at_target),
    })
}

/// Rows in (seed, grid) order regardless of the worker count.
pub fn run_bench(bc: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let points: Vec<(u64, VariantConfig)> = (bc.first_seed..bc.first_seed + bc.seeds)
        .flat_map(|s| bc.grid.iter().map(move |g| (s, *g)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(bc.jobs.max(1)).build()?;
    pool.install(|| points.par_iter().map(|(s, g)| bench_point(*s, g, bc)).collect())
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", r.to_csv()).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(jobs: usize) -> BenchConfig {
        BenchConfig {
            grid: vec![VariantConfig::gb(0.25).unwrap(), VariantConfig::gb(1.0 / 12.0).unwrap()],
            seeds: 4,
            sizes: Sizes { max_vertices: 4, max_edges: 5 },
            jobs,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn csv_is_independent_of_worker_count() {
        let a = to_csv(&run_bench(&small(1)).unwrap());
        let b = to_csv(&run_bench(&small(3)).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 9);
        assert!(a.starts_with("seed,param,T,"));
    }

    #[test]
    fn rows_respect_promises() {
        for r in run_bench(&small(2)).unwrap() {
            assert!(r.makespan <= r.promised_makespan * r.target + 1e-6);
            if let Some(c) = r.oracle_cost {
                assert!(r.cost <= r.promised_cost * c + 1e-6);
            }
        }
    }
}
