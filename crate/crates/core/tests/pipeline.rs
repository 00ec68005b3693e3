use balance_forge::drivers::{binary_search_makespan, round_with_threshold, solve_bicriteria, SolveOptions, VariantConfig};
use balance_forge::framework::local_step;
use balance_forge::io::{parse_instance, serialize_instance};
use balance_forge::lab::*;
use balance_forge::lp::{build_relaxation, solve_lp, solve_lp_exact, RelaxationSpec};
use balance_forge::model::{scale_to_target, VertexId};
use balance_forge::threshold::ThresholdFunction;
use num_rational::BigRational;

fn structured_instances() -> Vec<(&'static str, balance_forge::model::Instance, usize)> {
    vec![
        ("tightness-a", gen_tightness_a(0.8, 0.01).unwrap(), 0),
        ("tightness-b", gen_tightness_b(0.8, 0.01).unwrap(), 0),
        ("lb-cost", gen_lb_cost(0.0, 0.05, 3).unwrap(), 3),
        ("gbu-paths", gen_gbu_paths_sized(2, 4, 1.0 / 12.0, 3).unwrap(), 3),
        ("gbu-cycle", gen_gbu_cycle(1.0 / 12.0, 0.2, 3).unwrap(), 3),
    ]
}

#[test]
fn structured_instances_are_feasible_for_their_relaxation() {
    for (name, inst, k) in structured_instances() {
        let scaled = scale_to_target(&inst, 1.0).unwrap();
        let lp = build_relaxation(&scaled, RelaxationSpec::with_sets(k)).unwrap();
        assert!(solve_lp(&lp).is_ok(), "{name}");
    }
}

#[test]
fn structured_instances_round_trip_through_json() {
    for (name, inst, _) in structured_instances() {
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst, "{name}");
    }
}

#[test]
fn tightness_a_has_the_stated_unique_solution() {
    let (alpha, eps) = (0.8, 0.01);
    let inst = gen_tightness_a(alpha, eps).unwrap();
    let scaled = scale_to_target(&inst, 1.0).unwrap();
    let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
    let exact = solve_lp_exact(&lp).unwrap();
    let x = exact.to_fractional();
    assert!((x.value(0, VertexId(0), &scaled) - (1.0 - alpha)).abs() < 1e-9);
    assert!((x.value(1, VertexId(0), &scaled) - (alpha + eps)).abs() < 1e-9);
    assert!((x.value(2, VertexId(3), &scaled) - (alpha + eps)).abs() < 1e-9);
    let one = BigRational::from_integer(1.into());
    assert!(exact.fractional_loads(&scaled).iter().all(|l| *l == one));
}

#[test]
fn tightness_local_step_orients_only_the_isolated_edge() {
    let inst = gen_tightness_a(0.8, 0.01).unwrap();
    let scaled = scale_to_target(&inst, 1.0).unwrap();
    let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
    let x = solve_lp(&lp).unwrap();
    let local = local_step(&scaled, &x, &ThresholdFunction::step_half(0.8).unwrap());
    assert_eq!(&local.pre_oriented[..3], &[None, None, Some(VertexId(3))]);
    let r = round_with_threshold(&inst, 1.0, &ThresholdFunction::step_half(0.8).unwrap(), 0, false).unwrap();
    assert_eq!(&r.orientation.assignment[..2], &[VertexId(0), VertexId(0)]);
}

#[test]
fn gb_at_gamma_one_twelfth_reproduces_tightness() {
    let alpha = 2.0 / 3.0;
    let inst = gen_tightness_a(alpha, 1e-3).unwrap();
    let r = solve_bicriteria(&inst, 1.0, &VariantConfig::gb(1.0 / 12.0).unwrap(), &SolveOptions::default()).unwrap();
    assert!((r.makespan() - (1.5 + 0.5 * alpha - 0.5e-3)).abs() < 1e-9);
    assert_eq!(r.cost(), 1.0);
}

#[test]
fn report_json_is_schema_stable() {
    let inst = gen_random(Family::Gb, 3, Sizes::default()).unwrap();
    let (_, r) = binary_search_makespan(&inst, &VariantConfig::gb(0.15).unwrap(), 1e-6, &SolveOptions::default()).unwrap();
    let v = r.to_json();
    for key in ["feasible", "T", "variant", "params", "lp_value", "makespan", "cost", "promised", "orientation"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["orientation"].as_array().unwrap().len(), inst.num_edges());
    assert_eq!(v["params"]["threshold"], "step_half");
}

#[test]
fn exact_and_float_modes_agree_on_random_instances() {
    let cfg = VariantConfig::gb(0.07).unwrap();
    for seed in 0..10 {
        let inst = gen_random(Family::Gb, seed, Sizes { max_vertices: 4, max_edges: 6 }).unwrap();
        let f = solve_bicriteria(&inst, 1.5, &cfg, &SolveOptions::default());
        let e = solve_bicriteria(&inst, 1.5, &cfg, &SolveOptions { exact: true, lp_k: None });
        match (f, e) {
            (Ok(f), Ok(e)) => assert!((f.lp_value - e.lp_value).abs() < 1e-7, "seed {seed}"),
            (Err(_), Err(_)) => {}
            other => panic!("seed {seed}: {other:?}"),
        }
    }
}

#[test]
fn lower_bound_instance_splits_loads() {
    let inst = gen_lb_cost(0.0, 0.05, 3).unwrap();
    let loops_u = inst.edges.iter().filter(|e| e.is_self_loop() && e.endpoints[0].vertex == VertexId(0)).count();
    assert_eq!(loops_u, 51);
    assert!((inst.self_loop_loads()[0] - 0.85).abs() < 1e-12);
}
