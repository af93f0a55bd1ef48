//! Runs the cheap suites and prints the ledger as JSON.

use eulerian_slices::cli::{run_suites, Suite, VerifyConfig};

fn main() {
    let ledger = run_suites(
        &[Suite::Series, Suite::ClosedForm],
        VerifyConfig { orders: 6, seed: 7 },
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&ledger).expect("serializable")
    );
    std::process::exit(if ledger.passed() { 0 } else { 1 });
}
