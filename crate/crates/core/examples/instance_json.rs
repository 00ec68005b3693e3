//! Generates a gap instance, writes it as JSON and reads it back.

use balance_forge::io::{parse_instance, serialize_instance_pretty};
use balance_forge::lab::gen_tightness_b;

fn main() {
    let inst = gen_tightness_b(0.8, 0.01).unwrap();
    let text = serialize_instance_pretty(&inst);
    println!("{text}");
    assert_eq!(parse_instance(&text).unwrap(), inst);
}
