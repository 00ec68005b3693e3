//! Smallest feasible target per variant against the true optimum.

use balance_forge::drivers::{binary_search_makespan, SolveOptions, VariantConfig};
use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::oracle::{min_makespan, DEFAULT_CAP};

fn main() {
    let cases = [
        (Family::Gb, VariantConfig::gb(0.15).unwrap()),
        (Family::Srgb { c: 2.0 }, VariantConfig::srgb(2.0).unwrap()),
        (Family::Gbu { beta: 0.5 }, VariantConfig::gbu(0.5, 0.1).unwrap()),
    ];
    for (family, cfg) in cases {
        for seed in 0..3 {
            let inst = gen_random(family, seed, Sizes::default()).unwrap();
            let opt = min_makespan(&inst, DEFAULT_CAP).unwrap();
            let (t, r) = binary_search_makespan(&inst, &cfg, 1e-6, &SolveOptions::default()).unwrap();
            println!("{} seed {seed}: T {t:.4} <= opt {opt:.2}, makespan {:.3}", cfg.name(), r.makespan());
        }
    }
}
