//! Preferential attachment drift from a balanced clustering.
//!
//! The size sequence grows uneven over time. The permutation-model ARI
//! settles near zero regardless, while the fixed-count ARI tracks the size
//! entropy.
//!
//! ```bash
//! cargo run --release --example pref_attach
//! ```

use clustcmp::random_models::{pa_randomize, stream_rng};
use clustcmp::Clustering;

fn main() -> clustcmp::Result<()> {
    let start = Clustering::from_sizes(&[20; 10])?;
    let mut rng = stream_rng(1, 0);
    let trajectory = pa_randomize(&start, 100_000, &mut rng, 100)?;

    let mut tail: Vec<_> = trajectory.into_iter().filter(|p| p.step >= 10_000).collect();
    tail.sort_by(|a, b| a.size_entropy_bits.total_cmp(&b.size_entropy_bits));
    println!("{:>8} {:>10} {:>10} {:>10}", "decile", "H bits", "ARI perm", "ARI num");
    let per = tail.len() / 10;
    for (d, chunk) in tail.chunks(per).take(10).enumerate() {
        let mean = |f: fn(&clustcmp::random_models::PaTrajectoryPoint) -> f64| {
            chunk.iter().map(f).sum::<f64>() / chunk.len() as f64
        };
        println!(
            "{:>8} {:>10.3} {:>10.4} {:>10.4}",
            d + 1,
            mean(|p| p.size_entropy_bits),
            mean(|p| p.ari_perm),
            mean(|p| p.ari_num)
        );
    }
    Ok(())
}
