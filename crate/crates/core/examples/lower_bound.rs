//! Cost lower-bound family: relaxation value against the cheapest orientation
//! within the makespan budget.

use balance_forge::lab::gen_lb_cost;
use balance_forge::oracle::{oracle, DEFAULT_CAP};
use balance_forge::verify::lp_value;

fn main() {
    let eps = 0.01;
    for gamma in [0.0, 0.1, 0.2] {
        let inst = gen_lb_cost(gamma, eps, 3).unwrap();
        let lp = lp_value(&inst, 1.0, 3, true).unwrap().expect("feasible at T = 1");
        let exact = oracle(&inst, 1.75 + gamma, DEFAULT_CAP).unwrap();
        let c = exact.cost_at_target.unwrap_or(f64::INFINITY);
        println!("gamma {gamma}: lp {lp:.6}  C({:.2}) = {c}  ratio {:.4}", 1.75 + gamma, c / lp);
    }
}
