//! Samplers for the three random clustering ensembles, the preferential
//! attachment randomizer, and Monte Carlo estimates of expected similarity.
//!
//! All randomness comes from a caller-owned [`ChaCha8Rng`]. Independent
//! streams derive their seed as `seed ^ stream` ([`stream_rng`]).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clustering::{choose2, co_clustered_pairs, Clustering};
use crate::combinatorics::{bell_sequence, stirling_table};
use crate::error::{domain, Error, Result};
use crate::model::Evaluation;
use crate::mutual_info::{
    expected_mi_all, expected_mi_all_onesided, expected_mi_num, expected_mi_num_onesided, expected_mi_perm,
    mutual_information,
};
use crate::rand_index::{
    expected_rand_all, expected_rand_all_onesided, expected_rand_num, expected_rand_num_onesided, expected_rand_perm,
    rand_index,
};
use crate::summation::NeumaierSum;

/// The generator used everywhere in the crate.
pub type Rng64 = ChaCha8Rng;

/// Generator for stream `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed ^ stream)
}

/// Uniform relabeling of the elements of `template`; the size sequence is kept.
pub fn sample_perm<R: Rng + ?Sized>(template: &Clustering, rng: &mut R) -> Clustering {
    let mut labels = template.membership().to_vec();
    labels.shuffle(rng);
    Clustering::from_labels(&labels).expect("template is nonempty")
}

/// Uniform draw from the `S(n, k)` partitions of `n` elements into `k` blocks.
///
/// Walking down from element `n`, the element opens its own block with
/// probability `S(m-1, k-1) / S(m, k)`; otherwise it later joins one of the
/// `k` blocks formed by the elements before it, chosen uniformly.
pub fn sample_num<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Clustering> {
    if k == 0 || k > n {
        return domain(format!("sample_num needs 1 <= k <= n, got n={n}, k={k}"));
    }
    let table = stirling_table(n)?;
    // Some(blocks) = join one of `blocks` existing blocks; None = open a new block.
    let mut joins: Vec<Option<usize>> = vec![None; n];
    let mut blocks = k;
    for m in (1..=n).rev() {
        let p_new = (table.ln(m - 1, blocks - 1) - table.ln(m, blocks)).exp();
        if rng.random::<f64>() < p_new {
            blocks -= 1;
        } else {
            joins[m - 1] = Some(blocks);
        }
    }
    debug_assert_eq!(blocks, 0);
    let mut labels = Vec::with_capacity(n);
    let mut opened = 0usize;
    for join in joins {
        match join {
            None => {
                labels.push(opened);
                opened += 1;
            }
            Some(available) => {
                debug_assert_eq!(available, opened);
                labels.push(rng.random_range(0..available));
            }
        }
    }
    Clustering::from_labels(&labels)
}

/// Uniform draw from all `B_n` partitions of `n` elements: the block count is
/// drawn with probability `S(n, k) / B_n`, then [`sample_num`].
pub fn sample_all<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Clustering> {
    if n == 0 {
        return domain("sample_all needs n >= 1");
    }
    let table = stirling_table(n)?;
    let ln_bell = bell_sequence(n)?.ln(n);
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    let mut k = n;
    for candidate in 1..=n {
        cumulative += (table.ln(n, candidate) - ln_bell).exp();
        if u < cumulative {
            k = candidate;
            break;
        }
    }
    sample_num(n, k, rng)
}

/// One recorded state of the preferential attachment randomizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaTrajectoryPoint {
    pub step: usize,
    /// Entropy of the current cluster size sequence, in bits.
    pub size_entropy_bits: f64,
    /// Adjusted Rand index against the start under the permutation model.
    pub ari_perm: f64,
    /// Adjusted Rand index against the start under the fixed-count model.
    pub ari_num: f64,
}

/// Randomizes `start` by preferential attachment and records how far it drifts.
///
/// Each step picks a uniformly random element and a target cluster with
/// probability proportional to the current cluster sizes (the moving element
/// still counted in its own cluster). Drawing the target as the cluster of a
/// second uniformly random element realizes exactly that law. Moves back to the
/// element's own cluster are no-ops; moves that would empty a cluster are
/// rejected, so the number of clusters never changes.
///
/// Points are recorded at step 0 and then every `record_every` steps.
pub fn pa_randomize<R: Rng + ?Sized>(
    start: &Clustering,
    steps: usize,
    rng: &mut R,
    record_every: usize,
) -> Result<Vec<PaTrajectoryPoint>> {
    let k = start.n_clusters();
    let n = start.n_elements();
    if k < 2 {
        return domain(format!("preferential attachment needs at least 2 clusters, got {k}"));
    }
    if record_every == 0 {
        return domain("record_every must be positive");
    }
    let expected_num = expected_rand_num(k, k, n, Evaluation::Exact)?;
    if expected_num >= 1.0 {
        return Err(Error::UndefinedAdjustment {
            expectation: expected_num,
            reason: format!("K = {k} = N leaves a single clustering in the ensemble"),
        });
    }

    let origin = start.membership();
    let start_sizes = start.size_sequence();
    let pairs = choose2(n) as f64;
    let q_start = co_clustered_pairs(&start_sizes) as f64;

    let mut current = origin.to_vec();
    let mut sizes = start_sizes.clone();
    // overlap[r * k + c]: elements in start cluster r and current cluster c.
    let mut overlap = vec![0usize; k * k];
    for (&r, &c) in origin.iter().zip(&current) {
        overlap[r * k + c] += 1;
    }
    let mut n11: i128 = overlap.iter().map(|&x| choose2(x) as i128).sum();
    let mut q_current: i128 = co_clustered_pairs(&sizes) as i128;

    let record = |step: usize, sizes: &[usize], n11: i128, q_current: i128| -> PaTrajectoryPoint {
        let q = q_current as f64;
        let ri = (pairs - q_start - q + 2.0 * n11 as f64) / pairs;
        let pa = q_start / pairs;
        let pb = q / pairs;
        let expected_perm = pa * pb + (1.0 - pa) * (1.0 - pb);
        PaTrajectoryPoint {
            step,
            size_entropy_bits: crate::clustering::LogBase::Two.from_nats(crate::clustering::entropy_nats(sizes, n)),
            ari_perm: (ri - expected_perm) / (1.0 - expected_perm),
            ari_num: (ri - expected_num) / (1.0 - expected_num),
        }
    };

    let mut out = Vec::with_capacity(steps / record_every + 1);
    out.push(record(0, &sizes, n11, q_current));
    for step in 1..=steps {
        let element = rng.random_range(0..n);
        let target = current[rng.random_range(0..n)];
        let from = current[element];
        if target != from && sizes[from] > 1 {
            let row = origin[element];
            // C(x-1, 2) - C(x, 2) = -(x-1); C(x+1, 2) - C(x, 2) = x
            n11 -= overlap[row * k + from] as i128 - 1;
            n11 += overlap[row * k + target] as i128;
            overlap[row * k + from] -= 1;
            overlap[row * k + target] += 1;
            q_current -= sizes[from] as i128 - 1;
            q_current += sizes[target] as i128;
            sizes[from] -= 1;
            sizes[target] += 1;
            current[element] = target;
        }
        if step % record_every == 0 {
            out.push(record(step, &sizes, n11, q_current));
        }
    }
    Ok(out)
}

/// Similarity measure estimated by [`monte_carlo_expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Rand,
    Mi,
}

/// A random ensemble of clustering pairs.
#[derive(Debug, Clone, PartialEq)]
pub enum Ensemble {
    /// Both clusterings relabeled independently, sizes fixed.
    Perm {
        a: Clustering,
        b: Clustering,
    },
    /// `template` relabeled against a fixed `reference`.
    PermOneSided {
        template: Clustering,
        reference: Clustering,
    },
    Num {
        n: usize,
        k_a: usize,
        k_b: usize,
    },
    NumOneSided {
        k_a: usize,
        reference: Clustering,
    },
    All {
        n: usize,
    },
    AllOneSided {
        reference: Clustering,
    },
}

impl Ensemble {
    pub fn n_elements(&self) -> usize {
        match self {
            Ensemble::Perm { a, .. } => a.n_elements(),
            Ensemble::PermOneSided { reference, .. }
            | Ensemble::NumOneSided { reference, .. }
            | Ensemble::AllOneSided { reference } => reference.n_elements(),
            Ensemble::Num { n, .. } | Ensemble::All { n } => *n,
        }
    }

    fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidSpec(m));
        match self {
            Ensemble::Perm { a, b } if a.n_elements() != b.n_elements() => {
                invalid("perm ensemble clusterings differ in size".into())
            }
            Ensemble::PermOneSided { template, reference } if template.n_elements() != reference.n_elements() => {
                invalid("template and reference differ in size".into())
            }
            Ensemble::Num { n, k_a, k_b } if *k_a == 0 || *k_b == 0 || k_a > n || k_b > n => {
                invalid(format!("cluster counts {k_a}, {k_b} invalid for N = {n}"))
            }
            Ensemble::NumOneSided { k_a, reference } if *k_a == 0 || *k_a > reference.n_elements() => invalid(format!(
                "cluster count {k_a} invalid for N = {}",
                reference.n_elements()
            )),
            Ensemble::All { n } if *n == 0 => invalid("empty ensemble".into()),
            _ => Ok(()),
        }
    }

    /// Draws one pair `(random, other)`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Clustering, Clustering)> {
        Ok(match self {
            Ensemble::Perm { a, b } => (sample_perm(a, rng), sample_perm(b, rng)),
            Ensemble::PermOneSided { template, reference } => (sample_perm(template, rng), reference.clone()),
            Ensemble::Num { n, k_a, k_b } => (sample_num(*n, *k_a, rng)?, sample_num(*n, *k_b, rng)?),
            Ensemble::NumOneSided { k_a, reference } => {
                (sample_num(reference.n_elements(), *k_a, rng)?, reference.clone())
            }
            Ensemble::All { n } => (sample_all(*n, rng)?, sample_all(*n, rng)?),
            Ensemble::AllOneSided { reference } => (sample_all(reference.n_elements(), rng)?, reference.clone()),
        })
    }

    /// The closed-form expectation of `measure` over this ensemble.
    pub fn closed_form(&self, measure: Measure) -> Result<f64> {
        let n = self.n_elements();
        match (measure, self) {
            (Measure::Rand, Ensemble::Perm { a, b }) => expected_rand_perm(&a.size_sequence(), &b.size_sequence(), n),
            (Measure::Rand, Ensemble::PermOneSided { template, reference }) => {
                expected_rand_perm(&template.size_sequence(), &reference.size_sequence(), n)
            }
            (Measure::Rand, Ensemble::Num { k_a, k_b, .. }) => expected_rand_num(*k_a, *k_b, n, Evaluation::Exact),
            (Measure::Rand, Ensemble::NumOneSided { k_a, reference }) => expected_rand_num_onesided(*k_a, n, reference),
            (Measure::Rand, Ensemble::All { .. }) => expected_rand_all(n, Evaluation::Exact),
            (Measure::Rand, Ensemble::AllOneSided { reference }) => expected_rand_all_onesided(n, reference),
            (Measure::Mi, Ensemble::Perm { a, b }) => expected_mi_perm(&a.size_sequence(), &b.size_sequence(), n),
            (Measure::Mi, Ensemble::PermOneSided { template, reference }) => {
                expected_mi_perm(&template.size_sequence(), &reference.size_sequence(), n)
            }
            (Measure::Mi, Ensemble::Num { k_a, k_b, .. }) => expected_mi_num(*k_a, *k_b, n),
            (Measure::Mi, Ensemble::NumOneSided { k_a, reference }) => expected_mi_num_onesided(*k_a, n, reference),
            (Measure::Mi, Ensemble::All { .. }) => expected_mi_all(n),
            (Measure::Mi, Ensemble::AllOneSided { reference }) => expected_mi_all_onesided(n, reference),
        }
    }
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Estimates the expectation of `measure` over `ensemble` from `samples` draws.
pub fn monte_carlo_expectation<R: Rng + ?Sized>(
    measure: Measure,
    ensemble: &Ensemble,
    samples: usize,
    rng: &mut R,
) -> Result<Estimate> {
    if samples < 2 {
        return domain("Monte Carlo estimation needs at least 2 samples");
    }
    ensemble.validate()?;
    let mut sum = NeumaierSum::new();
    let mut values = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (x, y) = ensemble.draw(rng)?;
        let v = match measure {
            Measure::Rand => rand_index(&x, &y)?,
            Measure::Mi => mutual_information(&x, &y)?,
        };
        sum.add(v);
        values.push(v);
    }
    let mean = sum.value() / samples as f64;
    let squares: NeumaierSum = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = squares.value() / (samples - 1) as f64;
    Ok(Estimate {
        mean,
        std_error: (variance / samples as f64).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn perm_preserves_sizes_and_trivial_templates() {
        let mut rng = stream_rng(7, 0);
        let one = Clustering::one_cluster(6).unwrap();
        let single = Clustering::singletons(6).unwrap();
        let t = Clustering::from_sizes(&[3, 2, 1]).unwrap();
        for _ in 0..50 {
            assert_eq!(sample_perm(&one, &mut rng), one);
            assert_eq!(sample_perm(&single, &mut rng), single);
            let mut s = sample_perm(&t, &mut rng).size_sequence();
            s.sort_unstable();
            assert_eq!(s, vec![1, 2, 3]);
        }
    }

    #[test]
    fn perm_orbit_frequencies() {
        // sizes [2,2] over 4 elements: 3 partitions, each hit by 8 of 24 permutations.
        let t = Clustering::from_sizes(&[2, 2]).unwrap();
        let mut rng = stream_rng(11, 0);
        let draws = 30_000;
        let mut freq: HashMap<Vec<usize>, usize> = HashMap::new();
        for _ in 0..draws {
            *freq.entry(sample_perm(&t, &mut rng).membership().to_vec()).or_default() += 1;
        }
        assert_eq!(freq.len(), 3);
        let p = 1.0 / 3.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &count in freq.values() {
            assert!((count as f64 - draws as f64 * p).abs() < 3.0 * sigma, "{freq:?}");
        }
    }

    #[test]
    fn num_edge_cases() {
        let mut rng = stream_rng(3, 0);
        for _ in 0..20 {
            assert_eq!(sample_num(7, 7, &mut rng).unwrap(), Clustering::singletons(7).unwrap());
            assert_eq!(sample_num(7, 1, &mut rng).unwrap(), Clustering::one_cluster(7).unwrap());
            assert_eq!(sample_num(30, 4, &mut rng).unwrap().n_clusters(), 4);
        }
        assert!(sample_num(3, 4, &mut rng).is_err());
        assert!(sample_num(3, 0, &mut rng).is_err());
    }

    #[test]
    fn all_single_element() {
        let mut rng = stream_rng(5, 0);
        assert_eq!(sample_all(1, &mut rng).unwrap(), Clustering::one_cluster(1).unwrap());
        assert!(sample_all(0, &mut rng).is_err());
    }

    #[test]
    fn all_pair_co_clustering_rate() {
        let n = 6;
        let draws = 20_000;
        let mut rng = stream_rng(17, 0);
        let hits = (0..draws)
            .filter(|_| {
                let c = sample_all(n, &mut rng).unwrap();
                c.membership()[0] == c.membership()[1]
            })
            .count();
        let p = crate::combinatorics::bell_ratio(n).unwrap();
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((hits as f64 - draws as f64 * p).abs() < 3.0 * sigma);
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = {
            let mut rng = stream_rng(42, 3);
            (0..5).map(|_| sample_all(20, &mut rng).unwrap()).collect()
        };
        let b: Vec<_> = {
            let mut rng = stream_rng(42, 3);
            (0..5).map(|_| sample_all(20, &mut rng).unwrap()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn pa_initial_point_and_invariants() {
        let start = Clustering::from_sizes(&[20; 10]).unwrap();
        let mut rng = stream_rng(1, 0);
        let only = pa_randomize(&start, 0, &mut rng, 10).unwrap();
        assert_eq!(only.len(), 1);
        assert!((only[0].ari_perm - 1.0).abs() < 1e-12);
        assert!((only[0].ari_num - 1.0).abs() < 1e-12);
        assert!((only[0].size_entropy_bits - 10f64.log2()).abs() < 1e-12);

        let traj = pa_randomize(&start, 20_000, &mut rng, 1000).unwrap();
        assert_eq!(traj.len(), 21);
        assert!(traj.iter().all(|p| p.size_entropy_bits <= 10f64.log2() + 1e-12));
        assert!(traj.iter().any(|p| p.size_entropy_bits < 10f64.log2() - 0.1));

        let two = Clustering::one_cluster(5).unwrap();
        assert!(pa_randomize(&two, 10, &mut rng, 1).is_err());
        assert!(pa_randomize(&start, 10, &mut rng, 0).is_err());
    }

    #[test]
    fn monte_carlo_small_perm_mi() {
        let a = Clustering::from_sizes(&[2, 2]).unwrap();
        let ens = Ensemble::Perm { a: a.clone(), b: a };
        let mut rng = stream_rng(9, 0);
        let est = monte_carlo_expectation(Measure::Mi, &ens, 20_000, &mut rng).unwrap();
        let exact = ens.closed_form(Measure::Mi).unwrap();
        assert!((est.mean - exact).abs() < 3.0 * est.std_error);
        assert!(monte_carlo_expectation(Measure::Mi, &ens, 1, &mut rng).is_err());
        let bad = Ensemble::Num { n: 3, k_a: 4, k_b: 1 };
        assert!(matches!(
            monte_carlo_expectation(Measure::Rand, &bad, 10, &mut rng),
            Err(Error::InvalidSpec(_))
        ));
    }
}
