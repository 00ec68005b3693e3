use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use balance_forge::bench::{run_bench, to_csv, BenchConfig};
use balance_forge::drivers::{binary_search_makespan, infeasible_json, solve_bicriteria, SolveError, SolveOptions, VariantConfig};
use balance_forge::io::{parse_instance, serialize_instance_pretty};
use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::model::Instance;
use balance_forge::oracle::{oracle, OracleError, DEFAULT_CAP};
use balance_forge::verify::{certify_named, generate_named, CertifyError};

const FEASIBLE: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INFEASIBLE: u8 = 2;
const INPUT_ERROR: u8 = 3;
const INVARIANT: u8 = 4;
const CAP_EXCEEDED: u8 = 5;

#[derive(Parser)]
#[command(name = "balance-forge", version, about = "Bicriteria graph balancing solver and experiment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Gb,
    Gbuh,
    Gbu,
    Srgb,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct VariantArgs {
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long, default_value_t = 0.25)]
    gamma: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl VariantArgs {
    fn config(&self, param: Option<f64>) -> Result<VariantConfig, String> {
        let gamma = param.unwrap_or(self.gamma);
        let r = match self.variant {
            Variant::Gb => VariantConfig::gb(gamma),
            Variant::Gbuh => VariantConfig::gbuh(self.beta, gamma),
            Variant::Gbu => VariantConfig::gbu(self.beta, gamma),
            Variant::Srgb => VariantConfig::srgb(param.unwrap_or(self.c)),
        };
        r.map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Round the relaxation at a target makespan (or the smallest feasible one).
    Solve {
        #[command(flatten)]
        variant: VariantArgs,
        /// Omit to binary-search the smallest feasible target.
        #[arg(long)]
        target: Option<f64>,
        /// Instance JSON; `-` reads stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        lp_k: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
        /// Solve the relaxation in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// Exhaustive optimum makespan and cheapest orientation within a target.
    Oracle {
        #[arg(long)]
        input: String,
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Emit a structured gap instance, optionally certifying it.
    Gap {
        /// tightness-a, tightness-b, lb-cost, gbu-paths or gbu-cycle.
        #[arg(long)]
        name: String,
        /// Comma-separated `key=value` pairs, e.g. `alpha=0.8,epsilon=0.01`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        emit: Option<String>,
        #[arg(long)]
        certify: bool,
    },
    /// Emit a seeded random instance.
    Generate {
        /// gb, gbuh, gbu, gap or srgb.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
    },
    /// Sweep seeds and a parameter grid, writing one CSV row per point.
    Bench {
        #[command(flatten)]
        variant: VariantArgs,
        /// Values of γ (or of c for srgb); defaults to the single flag value.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
        #[arg(long)]
        exact: bool,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the acceptance checks; exit 0 iff all pass.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

fn read_input(path: &str) -> Result<Instance, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    parse_instance(&text).map_err(|e| e.to_string())
}

fn input_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    INPUT_ERROR
}

fn exact_requested(flag: bool) -> bool {
    flag || SolveOptions::from_env().exact
}

fn solve(variant: &VariantArgs, target: Option<f64>, input: &str, lp_k: Option<usize>, out: OutFormat, exact: bool, rel_tol: f64) -> u8 {
    let cfg = match variant.config(None) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let inst = match read_input(input) {
        Ok(i) => i,
        Err(e) => return input_error(e),
    };
    let opts = SolveOptions { exact: exact_requested(exact), lp_k };
    let result = match target {
        Some(t) if !(t.is_finite() && t > 0.0) => return input_error(format!("target must be positive, got {t}")),
        Some(t) => solve_bicriteria(&inst, t, &cfg, &opts),
        None => binary_search_makespan(&inst, &cfg, rel_tol, &opts).map(|(_, r)| r),
    };
    let report = match result {
        Ok(r) => r,
        Err(SolveError::Infeasible(reason)) => {
            println!("{}", infeasible_json(target.unwrap_or(f64::NAN), &cfg, &reason));
            return INFEASIBLE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return INVARIANT;
        }
    };
    match out {
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report serializes")),
        OutFormat::Csv => {
            println!("T,lp_value,makespan,cost,promised_makespan,promised_cost");
            println!(
                "{},{},{},{},{},{}",
                report.target,
                report.lp_value,
                report.makespan(),
                report.cost(),
                report.parameters.makespan_factor,
                report.parameters.cost_factor
            );
        }
    }
    match report.certify() {
        Ok(()) => FEASIBLE,
        Err(violations) => {
            for v in violations {
                eprintln!("invariant violated: {v}");
            }
            INVARIANT
        }
    }
}

fn parse_params(s: &str) -> Result<Map<String, Value>, String> {
    let mut map = Map::new();
    for pair in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| format!("expected key=value, got {pair:?}"))?;
        let v: f64 = v.trim().parse().map_err(|_| format!("{k}: not a number: {v:?}"))?;
        map.insert(k.trim().to_string(), Value::from(v));
    }
    Ok(map)
}

fn gap(name: &str, params: &str, emit: Option<&str>, certify: bool) -> u8 {
    let params = match parse_params(params) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let inst = match generate_named(name, &params) {
        Ok(i) => i,
        Err(e) => return input_error(e),
    };
    let text = serialize_instance_pretty(&inst);
    match emit {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return input_error(format!("{path}: {e}"));
            }
        }
        None if !certify => println!("{text}"),
        None => {}
    }
    if certify {
        match certify_named(name, &params) {
            Ok(v) => println!("{}", serde_json::to_string_pretty(&v).expect("json")),
            Err(CertifyError::Solve(SolveError::Infeasible(e))) => {
                eprintln!("infeasible: {e}");
                return INFEASIBLE;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return INVARIANT;
            }
        }
    }
    FEASIBLE
}

fn family(name: &str, beta: f64, c: f64) -> Result<Family, String> {
    Ok(match name {
        "gb" => Family::Gb,
        "gbuh" => Family::Gbuh { beta },
        "gbu" => Family::Gbu { beta },
        "gap" => Family::Gap,
        "srgb" => Family::Srgb { c },
        other => return Err(format!("unknown family {other:?}")),
    })
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Solve { variant, target, input, lp_k, out, exact, rel_tol } => {
            solve(&variant, target, &input, lp_k, out, exact, rel_tol)
        }
        Command::Oracle { input, target, cap } => {
            let inst = match read_input(&input) {
                Ok(i) => i,
                Err(e) => return input_error(e),
            };
            match oracle(&inst, target, cap) {
                Ok(r) => {
                    println!("{}", r.to_json());
                    FEASIBLE
                }
                Err(e @ OracleError::CapExceeded { .. }) => {
                    eprintln!("error: {e}");
                    CAP_EXCEEDED
                }
            }
        }
        Command::Gap { name, params, emit, certify } => gap(&name, &params, emit.as_deref(), certify),
        Command::Generate { family: name, seed, beta, c, max_vertices, max_edges } => {
            let fam = match family(&name, beta, c) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            match gen_random(fam, seed, Sizes { max_vertices, max_edges }) {
                Ok(inst) => {
                    println!("{}", serialize_instance_pretty(&inst));
                    FEASIBLE
                }
                Err(e) => input_error(e),
            }
        }
        Command::Bench { variant, grid, seeds, first_seed, max_vertices, max_edges, jobs, rel_tol, exact, out } => {
            let params: Vec<Option<f64>> =
                if grid.is_empty() { vec![None] } else { grid.into_iter().map(Some).collect() };
            let grid = match params.into_iter().map(|p| variant.config(p)).collect::<Result<Vec<_>, _>>() {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let bc = BenchConfig {
                grid,
                seeds,
                first_seed,
                sizes: Sizes { max_vertices, max_edges },
                rel_tol,
                jobs,
                options: SolveOptions { exact: exact_requested(exact), lp_k: None },
                ..BenchConfig::default()
            };
            let rows = match run_bench(&bc) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return INVARIANT;
                }
            };
            let csv = to_csv(&rows);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, csv) {
                        return input_error(format!("{path}: {e}"));
                    }
                }
                None => print!("{csv}"),
            }
            FEASIBLE
        }
        Command::Verify { criterion } => {
            let reports = match criterion {
                Some(id) => match balance_forge::verify::criterion(id) {
                    Some(r) => vec![r],
                    None => return input_error(format!("no criterion {id}")),
                },
                None => balance_forge::verify::run_all(),
            };
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().all(|r| r.passed) {
                FEASIBLE
            } else {
                CHECK_FAILED
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
