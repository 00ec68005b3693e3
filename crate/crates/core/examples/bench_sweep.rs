//! Empirical tradeoff curve on random graphs, as CSV on stdout.

use balance_forge::bench::{run_bench, to_csv, BenchConfig};
use balance_forge::drivers::VariantConfig;

fn main() {
    let grid = [0.07, 1.0 / 12.0, 0.15, 0.25].map(|g| VariantConfig::gb(g).unwrap()).to_vec();
    let bc = BenchConfig { grid, seeds: 20, jobs: 4, ..BenchConfig::default() };
    print!("{}", to_csv(&run_bench(&bc).unwrap()));
}
