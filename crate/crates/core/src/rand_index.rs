//! Rand index and its expectation under the three random models.
//!
//! Every two-sided expectation has the form `p_a p_b + (1 - p_a)(1 - p_b)`
//! where `p` is the probability that a fixed pair of elements is co-clustered
//! by a random clustering of the model. One-sided forms replace one `p` with
//! the co-clustered pair fraction of the fixed reference.

use serde::{Deserialize, Serialize};

use crate::clustering::{
    choose2, co_clustered_pairs, contingency, pair_counts, validate_sizes, Clustering, PairCounts,
};
use crate::combinatorics::{bell_ratio, bell_ratio_approx, stirling_ratio, stirling_ratio_approx};
use crate::error::{domain, Error, Result};
use crate::model::{adjust, Evaluation, Model, ReferenceSide, Sidedness};

/// Random model used to correct the Rand index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandModelSpec {
    pub model: Model,
    pub sided: Sidedness,
    /// Fixed clustering for one-sided comparisons.
    pub reference: Option<ReferenceSide>,
    pub evaluation: Evaluation,
}

impl RandModelSpec {
    pub fn two_sided(model: Model) -> Self {
        Self {
            model,
            sided: Sidedness::TwoSided,
            reference: None,
            evaluation: Evaluation::Exact,
        }
    }

    pub fn one_sided(model: Model, reference: ReferenceSide) -> Self {
        Self {
            model,
            sided: Sidedness::OneSided,
            reference: Some(reference),
            evaluation: Evaluation::Exact,
        }
    }

    pub fn with_evaluation(mut self, evaluation: Evaluation) -> Self {
        self.evaluation = evaluation;
        self
    }

    /// One-sided under the permutation model gives the same expectation as two-sided.
    pub fn equivalent_to_two_sided(&self) -> bool {
        self.sided == Sidedness::TwoSided || self.model == Model::Perm
    }

    pub fn validate(&self) -> Result<()> {
        match (self.sided, self.reference) {
            (Sidedness::OneSided, None) => Err(Error::InvalidSpec(
                "one-sided comparison needs a reference clustering".into(),
            )),
            (Sidedness::TwoSided, Some(_)) => Err(Error::InvalidSpec(
                "a reference clustering only applies to one-sided comparisons".into(),
            )),
            _ if self.model == Model::None && self.sided == Sidedness::OneSided => {
                Err(Error::InvalidSpec("model none has no one-sided form".into()))
            }
            _ => Ok(()),
        }
    }
}

fn check_pairs(n: usize) -> Result<()> {
    if n < 2 {
        return domain(format!("the Rand index needs at least 2 elements, got {n}"));
    }
    Ok(())
}

#[inline]
fn agreement(p: f64, q: f64) -> f64 {
    p * q + (1.0 - p) * (1.0 - q)
}

/// `(n11 + n00) / C(N, 2)` from pair counts.
pub fn rand_index_from_counts(p: &PairCounts) -> f64 {
    (p.n11 + p.n00) as f64 / p.total() as f64
}

/// Fraction of element pairs on which the two clusterings agree.
pub fn rand_index(a: &Clustering, b: &Clustering) -> Result<f64> {
    let t = contingency(a, b)?;
    check_pairs(t.n_elements())?;
    Ok(rand_index_from_counts(&pair_counts(&t)))
}

/// Fraction of pairs co-clustered by a clustering with the given sizes.
fn pair_fraction(sizes: &[usize], n: usize) -> f64 {
    co_clustered_pairs(sizes) as f64 / choose2(n) as f64
}

/// Expected Rand index when elements are shuffled between clusters of fixed sizes.
pub fn expected_rand_perm(sizes_a: &[usize], sizes_b: &[usize], n: usize) -> Result<f64> {
    check_pairs(n)?;
    validate_sizes(sizes_a, n)?;
    validate_sizes(sizes_b, n)?;
    Ok(agreement(pair_fraction(sizes_a, n), pair_fraction(sizes_b, n)))
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return domain(format!("cluster count {k} outside 1..={n}"));
    }
    Ok(())
}

/// Co-clustering probability for a uniformly random `k`-cluster partition.
fn num_pair_probability(k: usize, n: usize, evaluation: Evaluation) -> Result<f64> {
    check_k(k, n)?;
    match evaluation {
        Evaluation::Exact => stirling_ratio(n, k),
        Evaluation::Approx => Ok(stirling_ratio_approx(k)),
    }
}

/// Co-clustering probability for a uniformly random partition of `n` elements.
fn all_pair_probability(n: usize, evaluation: Evaluation) -> Result<f64> {
    match evaluation {
        Evaluation::Exact => bell_ratio(n),
        Evaluation::Approx => Ok(bell_ratio_approx(n)),
    }
}

/// Expected Rand index between independent uniform clusterings with `k_a` and `k_b` clusters.
pub fn expected_rand_num(k_a: usize, k_b: usize, n: usize, evaluation: Evaluation) -> Result<f64> {
    check_pairs(n)?;
    let pa = num_pair_probability(k_a, n, evaluation)?;
    let pb = num_pair_probability(k_b, n, evaluation)?;
    Ok(agreement(pa, pb))
}

/// Large-`N` limit of [`expected_rand_num`], which no longer depends on `N`.
pub fn expected_rand_num_approx(k_a: usize, k_b: usize) -> Result<f64> {
    if k_a == 0 || k_b == 0 {
        return domain("cluster counts must be positive");
    }
    Ok(agreement(stirling_ratio_approx(k_a), stirling_ratio_approx(k_b)))
}

/// Expected Rand index between two independent uniform clusterings of `n` elements.
pub fn expected_rand_all(n: usize, evaluation: Evaluation) -> Result<f64> {
    check_pairs(n)?;
    let r = all_pair_probability(n, evaluation)?;
    Ok(agreement(r, r))
}

/// Expected Rand index of a random `k_a`-cluster partition against a fixed reference.
pub fn expected_rand_num_onesided(k_a: usize, n: usize, reference: &Clustering) -> Result<f64> {
    expected_rand_num_onesided_sizes(k_a, n, &reference.size_sequence())
}

pub fn expected_rand_num_onesided_sizes(k_a: usize, n: usize, reference_sizes: &[usize]) -> Result<f64> {
    check_pairs(n)?;
    validate_sizes(reference_sizes, n)?;
    let pa = num_pair_probability(k_a, n, Evaluation::Exact)?;
    Ok(agreement(pa, pair_fraction(reference_sizes, n)))
}

/// Expected Rand index of a uniformly random partition against a fixed reference.
pub fn expected_rand_all_onesided(n: usize, reference: &Clustering) -> Result<f64> {
    expected_rand_all_onesided_sizes(n, &reference.size_sequence())
}

pub fn expected_rand_all_onesided_sizes(n: usize, reference_sizes: &[usize]) -> Result<f64> {
    check_pairs(n)?;
    validate_sizes(reference_sizes, n)?;
    let r = bell_ratio(n)?;
    Ok(agreement(r, pair_fraction(reference_sizes, n)))
}

/// Expected Rand index for the pair `(a, b)` under `spec`. Model none gives 0.
pub fn expected_rand(a: &Clustering, b: &Clustering, spec: &RandModelSpec) -> Result<f64> {
    spec.validate()?;
    if a.n_elements() != b.n_elements() {
        return Err(Error::ElementMismatch {
            symmetric_difference: a.n_elements().abs_diff(b.n_elements()),
        });
    }
    let n = a.n_elements();
    check_pairs(n)?;
    let (random, fixed) = match spec.reference {
        Some(ReferenceSide::A) => (b, a),
        _ => (a, b),
    };
    match (spec.model, spec.sided) {
        (Model::None, _) => Ok(0.0),
        (Model::Perm, _) => expected_rand_perm(&a.size_sequence(), &b.size_sequence(), n),
        (Model::Num, Sidedness::TwoSided) => expected_rand_num(a.n_clusters(), b.n_clusters(), n, spec.evaluation),
        (Model::Num, Sidedness::OneSided) => {
            let pa = num_pair_probability(random.n_clusters(), n, spec.evaluation)?;
            Ok(agreement(pa, pair_fraction(&fixed.size_sequence(), n)))
        }
        (Model::All, Sidedness::TwoSided) => expected_rand_all(n, spec.evaluation),
        (Model::All, Sidedness::OneSided) => {
            let r = all_pair_probability(n, spec.evaluation)?;
            Ok(agreement(r, pair_fraction(&fixed.size_sequence(), n)))
        }
    }
}

/// Rand index corrected for chance under `spec`; the maximum is 1 for every model.
pub fn adjusted_rand(a: &Clustering, b: &Clustering, spec: &RandModelSpec) -> Result<f64> {
    let raw = rand_index(a, b)?;
    let expectation = expected_rand(a, b, spec)?;
    adjust(raw, expectation, 1.0).map_err(|e| match e {
        Error::UndefinedAdjustment { expectation, .. } => Error::UndefinedAdjustment {
            expectation,
            reason: format!(
                "every clustering in the {} ensemble agrees on all pairs (K_a = {}, K_b = {}, N = {})",
                spec.model,
                a.n_clusters(),
                b.n_clusters(),
                a.n_elements()
            ),
        },
        other => other,
    })
}

/// The same expectations in exact rational arithmetic, from exact Stirling and
/// Bell numbers (`N <= EXACT_THRESHOLD`).
pub mod exact {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use super::check_k;
    use crate::clustering::{choose2, co_clustered_pairs, contingency, pair_counts, validate_sizes, Clustering};
    use crate::combinatorics::{bell_exact, stirling2_exact};
    use crate::error::{domain, Result};

    fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    fn agreement(p: &BigRational, q: &BigRational) -> BigRational {
        let one = BigRational::one();
        p * q + (&one - p) * (&one - q)
    }

    fn pair_fraction(sizes: &[usize], n: usize) -> BigRational {
        ratio(co_clustered_pairs(sizes), choose2(n))
    }

    fn num_probability(k: usize, n: usize) -> Result<BigRational> {
        check_k(k, n)?;
        if k == n {
            return Ok(BigRational::zero());
        }
        Ok(ratio(stirling2_exact(n - 1, k)?, stirling2_exact(n, k)?))
    }

    fn all_probability(n: usize) -> Result<BigRational> {
        Ok(ratio(bell_exact(n - 1)?, bell_exact(n)?))
    }

    fn check_pairs(n: usize) -> Result<()> {
        if n < 2 {
            return domain(format!("the Rand index needs at least 2 elements, got {n}"));
        }
        Ok(())
    }

    pub fn rand_index(a: &Clustering, b: &Clustering) -> Result<BigRational> {
        let p = pair_counts(&contingency(a, b)?);
        check_pairs(a.n_elements())?;
        Ok(ratio(p.n11 + p.n00, p.total()))
    }

    pub fn expected_rand_perm(sizes_a: &[usize], sizes_b: &[usize], n: usize) -> Result<BigRational> {
        check_pairs(n)?;
        validate_sizes(sizes_a, n)?;
        validate_sizes(sizes_b, n)?;
        Ok(agreement(&pair_fraction(sizes_a, n), &pair_fraction(sizes_b, n)))
    }

    pub fn expected_rand_num(k_a: usize, k_b: usize, n: usize) -> Result<BigRational> {
        check_pairs(n)?;
        Ok(agreement(&num_probability(k_a, n)?, &num_probability(k_b, n)?))
    }

    pub fn expected_rand_all(n: usize) -> Result<BigRational> {
        check_pairs(n)?;
        let r = all_probability(n)?;
        Ok(agreement(&r, &r))
    }

    pub fn expected_rand_num_onesided(k_a: usize, n: usize, reference_sizes: &[usize]) -> Result<BigRational> {
        check_pairs(n)?;
        validate_sizes(reference_sizes, n)?;
        Ok(agreement(&num_probability(k_a, n)?, &pair_fraction(reference_sizes, n)))
    }

    pub fn expected_rand_all_onesided(n: usize, reference_sizes: &[usize]) -> Result<BigRational> {
        check_pairs(n)?;
        validate_sizes(reference_sizes, n)?;
        Ok(agreement(&all_probability(n)?, &pair_fraction(reference_sizes, n)))
    }
}
