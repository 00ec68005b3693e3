//! `C(T)` as a step function of the target on one random instance.

use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::oracle::{oracle, DEFAULT_CAP};

fn main() {
    let inst = gen_random(Family::Gb, 7, Sizes::default()).unwrap();
    let base = oracle(&inst, 0.0, DEFAULT_CAP).unwrap();
    println!("optimal makespan {:.2}", base.min_makespan);
    for step in 0..6 {
        let t = base.min_makespan + 0.2 * step as f64;
        let r = oracle(&inst, t, DEFAULT_CAP).unwrap();
        println!("C({t:.2}) = {:?}  [{} leaves]", r.cost_at_target, r.enumerated);
    }
}
