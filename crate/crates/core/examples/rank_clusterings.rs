//! Rank a set of clusterings against each other under different random models.
//!
//! Under the all-clusterings model the adjusted Rand index is an increasing
//! affine function of the raw index, so its ranking never changes; the
//! permutation and fixed-count models can reorder pairs.
//!
//! ```bash
//! cargo run --example rank_clusterings
//! ```

use clustcmp::compare::{rank, CompareOptions};
use clustcmp::{Clustering, LabeledClustering, MiNormalizer, Model};

fn labeled(labels: &[usize]) -> LabeledClustering {
    LabeledClustering::from_clustering(Clustering::from_labels(labels).expect("nonempty"))
}

fn main() -> clustcmp::Result<()> {
    // 24 elements: a balanced reference, a refinement, a coarsening and a skewed split.
    let x: Vec<usize> = (0..24).map(|i| i / 6).collect();
    let y: Vec<usize> = (0..24).map(|i| i / 3).collect();
    let z: Vec<usize> = (0..24).map(|i| usize::from(i >= 12)).collect();
    let w: Vec<usize> = (0..24).map(|i| if i < 20 { 0 } else { i % 4 + 1 }).collect();
    let set = vec![
        ("X".to_string(), labeled(&x)),
        ("Y".to_string(), labeled(&y)),
        ("Z".to_string(), labeled(&z)),
        ("W".to_string(), labeled(&w)),
    ];

    for (title, options) in [
        ("Rand, raw", CompareOptions::rand(Model::None)),
        ("ARI perm", CompareOptions::rand(Model::Perm)),
        ("ARI num", CompareOptions::rand(Model::Num)),
        ("ARI all", CompareOptions::rand(Model::All)),
        ("AMI perm", CompareOptions::mi(Model::Perm, MiNormalizer::Max)),
        ("AMI all", CompareOptions::mi(Model::All, MiNormalizer::Max)),
    ] {
        let ranked = rank(&set, &options)?;
        let order: Vec<String> = ranked
            .iter()
            .map(|r| format!("{}{} {:.3}", r.a, r.b, r.result.adjusted))
            .collect();
        println!("{title:<10} {}", order.join("  "));
    }
    Ok(())
}
