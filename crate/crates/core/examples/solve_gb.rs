//! Rounds a small multigraph at a fixed target for a few points on the
//! makespan/cost tradeoff.

use balance_forge::drivers::{solve_bicriteria, SolveOptions, VariantConfig};
use balance_forge::model::InstanceBuilder;

fn main() {
    let mut b = InstanceBuilder::new();
    let [a, x, y] = ["a", "b", "c"].map(|n| b.vertex(n));
    b.related_edge(&[(a, 0.0), (x, 1.0)], 0.8);
    b.related_edge(&[(x, 0.0), (y, 0.5)], 0.6);
    b.related_edge(&[(y, 0.0), (a, 0.2)], 0.7);
    b.self_loop(a, 0.3);
    let inst = b.build();

    for gamma in [0.07, 1.0 / 12.0, 0.25] {
        let cfg = VariantConfig::gb(gamma).unwrap();
        let r = solve_bicriteria(&inst, 1.0, &cfg, &SolveOptions::default()).unwrap();
        println!(
            "gamma {gamma:.4}: {} k={} makespan {:.3} (<= {:.3}) cost {:.3} (lp {:.3})",
            r.parameters.threshold,
            r.parameters.k,
            r.makespan(),
            r.promised_makespan(),
            r.cost(),
            r.lp_value
        );
    }
}
