//! Heavy related edges plus light hyperedges, swept over beta.

use balance_forge::drivers::{binary_search_makespan, SolveOptions, VariantConfig};
use balance_forge::lab::{gen_random, Family, Sizes};

fn main() {
    for beta in [0.3, 0.5, 0.7] {
        let gamma = VariantConfig::light_gamma_min(beta);
        let cfg = VariantConfig::gbuh(beta, gamma).unwrap();
        let mut worst: f64 = 0.0;
        for seed in 0..50 {
            let inst = gen_random(Family::Gbuh { beta }, seed, Sizes::default()).unwrap();
            let (t, r) = binary_search_makespan(&inst, &cfg, 1e-6, &SolveOptions::default()).unwrap();
            worst = worst.max(r.makespan() / t);
        }
        println!("beta {beta}: gamma {gamma:.4}, worst makespan/T {worst:.4} (promised {:.4})", 1.75 + gamma);
    }
}
