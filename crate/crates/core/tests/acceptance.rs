//! Prints one `criterion N: PASS|FAIL — ...` line per acceptance criterion
//! and exits non-zero if any failed. `cargo test --test acceptance -- 3 7`
//! runs a subset.

use std::process::ExitCode;

use balance_forge::verify::{criterion, CRITERIA};

fn main() -> ExitCode {
    let picked: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u8> = if picked.is_empty() { (1..=CRITERIA).collect() } else { picked };
    let mut failed = Vec::new();
    for id in ids {
        let r = criterion(id).expect("known criterion");
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
