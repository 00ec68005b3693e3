//! Prints the relaxation with sets of size 3 for a tiny instance.

use balance_forge::lp::{build_relaxation, RelaxationSpec};
use balance_forge::model::{scale_to_target, InstanceBuilder};

fn main() {
    let mut b = InstanceBuilder::new();
    let u = b.vertex("u");
    let v = b.vertex("v");
    let w = b.vertex("w");
    b.related_edge(&[(u, 0.0), (v, 1.0)], 0.6);
    b.related_edge(&[(u, 0.5), (w, 0.0)], 0.6);
    b.self_loop(u, 0.3);
    let scaled = scale_to_target(&b.build(), 1.0).unwrap();
    print!("{}", build_relaxation(&scaled, RelaxationSpec::with_sets(3)).unwrap().dump());
}
