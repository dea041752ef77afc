//! Expected Rand index and mutual information under each random model.
//!
//! ```bash
//! cargo run --example expectations
//! ```

use clustcmp::mutual_info::{expected_mi_all, expected_mi_num, expected_mi_perm};
use clustcmp::rand_index::{expected_rand_all, expected_rand_num, expected_rand_num_approx, expected_rand_perm};
use clustcmp::Evaluation;

fn main() -> clustcmp::Result<()> {
    let n = 100;
    println!("N = {n}");
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10}",
        "K", "E_num RI", "1/K form", "E_perm RI", "E_num MI"
    );
    for k in [2, 3, 5, 10, 20] {
        let sizes: Vec<usize> = (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
        println!(
            "{k:>4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            expected_rand_num(k, k, n, Evaluation::Exact)?,
            expected_rand_num_approx(k, k)?,
            expected_rand_perm(&sizes, &sizes, n)?,
            expected_mi_num(k, k, n)?,
        );
    }
    println!("\nall clusterings:");
    for n in [10, 50, 100, 200] {
        println!(
            "  N={n:<4} E RI = {:.6} (approx {:.6})  E MI = {:.6} nats",
            expected_rand_all(n, Evaluation::Exact)?,
            expected_rand_all(n, Evaluation::Approx)?,
            expected_mi_all(n)?
        );
    }
    println!(
        "\nE_perm MI for sizes [50, 50] vs [25; 4]: {:.6}",
        expected_mi_perm(&[50, 50], &[25; 4], 100)?
    );
    Ok(())
}
