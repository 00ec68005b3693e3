//! The single-step threshold is tight: both instances are rounded to their
//! worst-case makespan while paying cost 1.

use balance_forge::drivers::round_with_threshold;
use balance_forge::lab::{gen_tightness_a, gen_tightness_b};
use balance_forge::threshold::ThresholdFunction;

fn main() {
    let eps = 1e-3;
    for alpha in [2.0 / 3.0, 0.75, 0.9] {
        let f = ThresholdFunction::step_half(alpha).unwrap();
        let a = round_with_threshold(&gen_tightness_a(alpha, eps).unwrap(), 1.0, &f, 0, true).unwrap();
        let b = round_with_threshold(&gen_tightness_b(alpha, eps).unwrap(), 1.0, &f, 0, true).unwrap();
        println!(
            "alpha {alpha:.3}: (a) makespan {:.6} cost {} lp {:.6} | (b) makespan {:.6} cost {}",
            a.evaluation.makespan, a.evaluation.total_cost, a.lp_value, b.evaluation.makespan, b.evaluation.total_cost
        );
    }
}
