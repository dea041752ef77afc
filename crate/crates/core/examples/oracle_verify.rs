//! Exhaustive enumeration as ground truth for every closed form.
//!
//! ```bash
//! cargo run --release --example oracle_verify -- 7
//! ```

use clustcmp::oracle::{enumerate_all, exact_expectation, OracleMeasure};
use clustcmp::random_models::Ensemble;
use clustcmp::verify::{verify_all, VerifyOptions};
use clustcmp::Clustering;

fn main() -> clustcmp::Result<()> {
    let max_n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);

    for s in enumerate_all(4)?.take(5) {
        println!("{:?}", s.codes());
    }
    println!("...");

    let e_all = exact_expectation(OracleMeasure::Rand, &Ensemble::All { n: 4 })?;
    println!("E[RI] over all partitions of 4 elements: {e_all}");
    let halves = Clustering::from_sizes(&[2, 2])?;
    let e_mi = exact_expectation(
        OracleMeasure::Mi,
        &Ensemble::Perm {
            a: halves.clone(),
            b: halves,
        },
    )?;
    println!("E[MI] for two shuffled [2, 2] clusterings: {e_mi}\n");

    let report = verify_all(&VerifyOptions { max_n, corrupt: None })?;
    print!("{report}");
    println!(
        "{}",
        if report.passed() {
            "all formulas agree"
        } else {
            "MISMATCH"
        }
    );
    Ok(())
}
