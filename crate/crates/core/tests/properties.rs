use balance_forge::drivers::{binary_search_makespan, solve_bicriteria, SolveOptions, VariantConfig};
use balance_forge::framework::local_step;
use balance_forge::io::{parse_instance, serialize_instance};
use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::lp::{build_relaxation, sanitize_solution, solve_lp, RelaxationSpec};
use balance_forge::model::{evaluate, scale_to_target, Instance, Orientation};
use balance_forge::oracle::{min_makespan, oracle, DEFAULT_CAP};
use balance_forge::st::{build_slots, st_round};
use balance_forge::threshold::ThresholdFunction;
use proptest::prelude::*;

const SMALL: Sizes = Sizes { max_vertices: 5, max_edges: 7 };

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Gb),
        Just(Family::Gap),
        (0.2..0.8f64).prop_map(|beta| Family::Gbuh { beta }),
        (1.0..5.0f64).prop_map(|c| Family::Srgb { c }),
    ]
}

fn instance() -> impl Strategy<Value = Instance> {
    (family(), any::<u64>()).prop_map(|(f, s)| gen_random(f, s, SMALL).unwrap())
}

fn first_endpoints(inst: &Instance) -> Orientation {
    Orientation { assignment: inst.edges.iter().map(|e| e.endpoints[0].vertex).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(inst in instance()) {
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn optimum_scales_with_weights(inst in instance(), shift in 0i32..3) {
        let f = 2f64.powi(shift - 1);
        let a = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let b = min_makespan(&inst.scaled_weights(f), DEFAULT_CAP).unwrap();
        prop_assert!((a * f - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn evaluation_ignores_edge_order(inst in instance(), rot in 0usize..7) {
        let o = first_endpoints(&inst);
        let mut rotated = inst.clone();
        let mut ro = o.clone();
        let r = rot % inst.edges.len();
        rotated.edges.rotate_left(r);
        ro.assignment.rotate_left(r);
        let a = evaluate(&inst, &o).unwrap();
        let b = evaluate(&rotated, &ro).unwrap();
        prop_assert!((a.makespan - b.makespan).abs() < 1e-12);
        prop_assert!((a.total_cost - b.total_cost).abs() < 1e-12);
    }

    #[test]
    fn relaxations_lower_bound_the_oracle(inst in instance(), stretch in 1.0..1.5f64) {
        let t = min_makespan(&inst, DEFAULT_CAP).unwrap() * stretch;
        let ct = oracle(&inst, t, DEFAULT_CAP).unwrap().cost_at_target.unwrap();
        let scaled = scale_to_target(&inst, t).unwrap();
        for k in [0, 3] {
            let lp = build_relaxation(&scaled, RelaxationSpec::with_sets(k)).unwrap();
            let v = solve_lp(&lp).unwrap().objective_value;
            prop_assert!(v <= ct + 1e-9, "k {} value {} above C(T) {}", k, v, ct);
        }
    }

    #[test]
    fn slots_conserve_mass(inst in instance()) {
        let t = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let scaled = scale_to_target(&inst, t).unwrap();
        let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
        let x = sanitize_solution(&scaled, &solve_lp(&lp).unwrap());
        let table = build_slots(&scaled, &x);
        let mass = x.vertex_mass(&scaled);
        for (u, slots) in table.slots.iter().enumerate() {
            let placed: f64 = slots.iter().map(|s| s.total()).sum();
            prop_assert!((placed - mass[u]).abs() < 1e-6);
            prop_assert!(slots.iter().all(|s| s.total() <= 1.0 + 1e-9));
        }
    }

    #[test]
    fn matching_rounding_bounds(inst in instance()) {
        let t = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let scaled = scale_to_target(&inst, t).unwrap();
        let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
        let raw = solve_lp(&lp).unwrap();
        let x = sanitize_solution(&scaled, &raw);
        let ev = evaluate(&inst, &st_round(&scaled, &x).unwrap()).unwrap();
        let pmax = inst.edges.iter().flat_map(|e| &e.endpoints).map(|ep| ep.p).filter(|&p| p <= t).fold(0.0, f64::max);
        prop_assert!(ev.makespan <= t + pmax + 1e-6);
        prop_assert!(ev.total_cost <= raw.objective_value + 1e-6);
    }

    #[test]
    fn one_big_local_edge_per_vertex(seed in any::<u64>(), alpha in 0.67..1.0f64) {
        let inst = gen_random(Family::Gb, seed, Sizes::default()).unwrap();
        let t = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let scaled = scale_to_target(&inst, t).unwrap();
        let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
        let x = sanitize_solution(&scaled, &solve_lp(&lp).unwrap());
        let local = local_step(&scaled, &x, &ThresholdFunction::step_half(alpha).unwrap());
        let mut big = vec![0; inst.num_vertices()];
        for (e, to) in local.pre_oriented.iter().enumerate() {
            if let Some(v) = to {
                if scaled.edges()[e].endpoints[0].p > 0.5 {
                    big[v.0] += 1;
                }
            }
        }
        prop_assert!(big.iter().all(|&b| b <= 1));
    }

    #[test]
    fn residual_edges_are_not_locally_oriented(seed in any::<u64>()) {
        let inst = gen_random(Family::Gb, seed, SMALL).unwrap();
        let cfg = VariantConfig::gb(0.07).unwrap();
        let (_, r) = binary_search_makespan(&inst, &cfg, 1e-6, &SolveOptions::default()).unwrap();
        let residual = r.local.residual();
        for (e, pre) in r.local.pre_oriented.iter().enumerate() {
            prop_assert_eq!(residual[e], pre.is_none());
            if let Some(v) = pre {
                prop_assert_eq!(r.orientation.assignment[e], *v);
            }
        }
    }

    #[test]
    fn solving_is_deterministic(inst in instance(), gamma in 0.0833..0.25f64) {
        let cfg = VariantConfig::gb(gamma).unwrap();
        let t = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let a = solve_bicriteria(&inst, t, &cfg, &SolveOptions::default()).unwrap();
        let b = solve_bicriteria(&inst, t, &cfg, &SolveOptions::default()).unwrap();
        prop_assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }

    #[test]
    fn thresholds_are_non_increasing(eps in 0.0..0.0389f64, a in 0.5..1.0f64, b in 0.0..0.5f64, p in 0.0..1.0f64, q in 0.0..1.0f64) {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        for f in [
            ThresholdFunction::ConstantOne,
            ThresholdFunction::step_half(2.0 / 3.0 + a / 3.0 - 1.0 / 6.0).unwrap(),
            ThresholdFunction::two_step(eps).unwrap(),
            ThresholdFunction::step_at(a, b).unwrap(),
        ] {
            prop_assert!(f.eval(hi) <= f.eval(lo) + 1e-15, "{}", f);
        }
    }
}
