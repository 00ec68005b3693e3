//! Threshold parameters for semi-related instances as the weight ratio grows.

use balance_forge::drivers::{cubic, cubic_root, srgb_breakpoint, srgb_load_terms};

fn main() {
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "c", "a", "b", "makespan", "|g(a)|");
    for c in [1.0, 1.5, 2.0, 5.0, 10.0, 100.0, 1e4] {
        let a = cubic_root(c);
        let b = srgb_breakpoint(c, a);
        let terms = srgb_load_terms(c, a, b);
        println!("{c:>8} {a:>10.6} {b:>10.6} {:>10.6} {:>10.1e}", terms[1], cubic(c, a).abs());
    }
}
