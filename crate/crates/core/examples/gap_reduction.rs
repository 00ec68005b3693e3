//! General assignment through the unrelated-heavy solver, against the
//! exhaustive optimum.

use balance_forge::drivers::{gap_reduction, SolveOptions, VariantConfig};
use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::oracle::{min_makespan, DEFAULT_CAP};

fn main() {
    let inner = VariantConfig::gbu(1.0, 0.25).unwrap();
    for seed in 0..8 {
        let inst = gen_random(Family::Gap, seed, Sizes { max_vertices: 4, max_edges: 6 }).unwrap();
        let opt = min_makespan(&inst, DEFAULT_CAP).unwrap();
        let r = gap_reduction(&inst, 1.0, 0.01, &inner, 1e-6, &SolveOptions::default()).unwrap();
        println!(
            "seed {seed}: opt {opt:.2} got {:.2} ratio {:.3} (level {}, {} rounds)",
            r.evaluation.makespan,
            r.evaluation.makespan / opt,
            r.level,
            r.rounds_solved
        );
    }
}
