//! Stirling and Bell numbers far beyond `u64`, and the pair probabilities
//! built from them.
//!
//! ```bash
//! cargo run --example combinatorics
//! ```

use clustcmp::combinatorics::{bell, bell_exact, bell_ratio, bell_ratio_approx, stirling2, stirling_ratio};

fn main() -> clustcmp::Result<()> {
    println!("B_20 = {}", bell_exact(20)?);
    for n in [100, 1000, 5000] {
        println!("ln B_{n} = {:.4}", bell(n)?.ln());
    }
    println!("ln S(1000, 10) = {:.4}", stirling2(1000, 10)?.ln());

    println!("\nP(two elements share a cluster), fixed K vs 1/K");
    for (n, k) in [(20, 4), (100, 4), (100, 10), (1000, 10)] {
        println!(
            "  N={n:<5} K={k:<3} {:.6}  vs {:.6}",
            stirling_ratio(n, k)?,
            1.0 / k as f64
        );
    }

    println!("\nP(two elements share a cluster), all clusterings vs ln N / N");
    for n in [10, 100, 1000, 10000] {
        let exact = bell_ratio(n)?;
        let approx = bell_ratio_approx(n);
        println!(
            "  N={n:<6} {exact:.6e}  vs {approx:.6e}  rel gap {:.3}",
            (exact - approx).abs() / exact
        );
    }
    Ok(())
}
