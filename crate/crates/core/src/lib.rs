//! Clustering similarity with chance correction under explicit random models.
//!
//! Two similarity measures are provided, the Rand index ([`rand_index`]) and
//! mutual information ([`mutual_info`]). Each can be corrected for chance
//! against three random clustering ensembles:
//!
//! * [`Model::Perm`]: elements shuffled between clusters of fixed sizes,
//! * [`Model::Num`]: uniform over clusterings with a fixed number of clusters,
//! * [`Model::All`]: uniform over all clusterings of the elements,
//!
//! either two-sided (both clusterings random) or one-sided (one clustering is a
//! fixed reference). Closed-form expectations rest on Stirling and Bell numbers
//! from [`combinatorics`]; [`oracle`] recomputes every one of them by brute-force
//! enumeration and [`random_models`] by sampling.
//!
//! ```
//! use clustcmp::{Clustering, Model, rand_index::{adjusted_rand, RandModelSpec}};
//!
//! let a = Clustering::from_labels(&[0, 0, 1, 1]).unwrap();
//! let b = Clustering::from_labels(&[0, 1, 0, 1]).unwrap();
//! let ari = adjusted_rand(&a, &b, &RandModelSpec::two_sided(Model::Perm)).unwrap();
//! assert!((ari + 0.5).abs() < 1e-12);
//! ```

pub mod clustering;
pub mod combinatorics;
pub mod compare;
pub mod error;
pub mod io;
pub mod model;
pub mod mutual_info;
pub mod oracle;
pub mod rand_index;
pub mod random_models;
pub mod summation;
pub mod verify;

pub use clustering::{
    clustering_from_labels, contingency, entropy, joint_entropy, pair_counts, size_sequence_entropy, Clustering,
    ContingencyTable, LabeledClustering, LogBase, PairCounts,
};
pub use error::{Error, Result};
pub use model::{adjust, Evaluation, Model, ReferenceSide, Sidedness};
pub use mutual_info::{MiModelSpec, MiNormalizer};
pub use rand_index::RandModelSpec;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "CLUSTCMP_THREADS";
