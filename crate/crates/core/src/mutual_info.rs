//! Mutual information, its normalizations, and its expectation under the
//! three random models.
//!
//! All quantities are in nats. Expectations under the fixed-count and
//! all-clusterings models are written as sums over cluster sizes: the expected
//! number of clusters of size `a` in a random clustering, times the
//! hypergeometric law of the overlap between an `a`-cluster and a `b`-cluster.
//! The joint-entropy integrand is `(n/N) log(n/N)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{contingency, entropy_nats, validate_sizes, Clustering, ContingencyTable};
use crate::combinatorics::{bell_sequence, fill_pmf, ln_binomial_unchecked, stirling_table};
use crate::error::{domain, Error, Result};
use crate::model::{adjust, Model, ReferenceSide, Sidedness};
use crate::summation::NeumaierSum;

/// Upper bound used to normalize mutual information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MiNormalizer {
    Min,
    Sqrt,
    Sum,
    #[default]
    Max,
    #[serde(rename = "maxlogk")]
    MaxLogK,
    #[serde(rename = "logn")]
    LogN,
}

impl MiNormalizer {
    pub const ALL: [MiNormalizer; 6] = [
        MiNormalizer::Min,
        MiNormalizer::Sqrt,
        MiNormalizer::Sum,
        MiNormalizer::Max,
        MiNormalizer::MaxLogK,
        MiNormalizer::LogN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MiNormalizer::Min => "min",
            MiNormalizer::Sqrt => "sqrt",
            MiNormalizer::Sum => "sum",
            MiNormalizer::Max => "max",
            MiNormalizer::MaxLogK => "maxlogk",
            MiNormalizer::LogN => "logn",
        }
    }

    /// Combines two per-clustering bounds (entropies or log cluster counts).
    fn combine(self, x: f64, y: f64) -> f64 {
        match self {
            MiNormalizer::Min => x.min(y),
            MiNormalizer::Sqrt => (x * y).sqrt(),
            MiNormalizer::Sum => 0.5 * (x + y),
            MiNormalizer::Max | MiNormalizer::MaxLogK | MiNormalizer::LogN => x.max(y),
        }
    }
}

impl std::fmt::Display for MiNormalizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MiNormalizer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MiNormalizer::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown normalizer {s:?}")))
    }
}

/// Random model and normalizer for adjusted mutual information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiModelSpec {
    pub model: Model,
    pub sided: Sidedness,
    pub normalizer: MiNormalizer,
    pub reference: Option<ReferenceSide>,
}

impl MiModelSpec {
    pub fn two_sided(model: Model, normalizer: MiNormalizer) -> Self {
        Self {
            model,
            sided: Sidedness::TwoSided,
            normalizer,
            reference: None,
        }
    }

    pub fn one_sided(model: Model, normalizer: MiNormalizer, reference: ReferenceSide) -> Self {
        Self {
            model,
            sided: Sidedness::OneSided,
            normalizer,
            reference: Some(reference),
        }
    }

    /// Normalizer actually applied: the all-clusterings model always uses `log N`.
    pub fn effective_normalizer(&self) -> MiNormalizer {
        if self.model == Model::All {
            MiNormalizer::LogN
        } else {
            self.normalizer
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.sided, self.reference) {
            (Sidedness::OneSided, None) => {
                return Err(Error::InvalidSpec(
                    "one-sided comparison needs a reference clustering".into(),
                ))
            }
            (Sidedness::TwoSided, Some(_)) => {
                return Err(Error::InvalidSpec(
                    "a reference clustering only applies to one-sided comparisons".into(),
                ))
            }
            _ => {}
        }
        if self.model == Model::None && self.sided == Sidedness::OneSided {
            return Err(Error::InvalidSpec("model none has no one-sided form".into()));
        }
        if self.model == Model::Num && self.normalizer == MiNormalizer::LogN {
            return Err(Error::InvalidSpec(
                "the fixed-count model bounds MI by log K; use min, sqrt, sum, max or maxlogk".into(),
            ));
        }
        Ok(())
    }
}

/// `MI` from a contingency table.
///
/// Cells are summed in an order that depends only on the multiset of
/// `(n, {a, b})` triples, so `MI(a, b)` and `MI(b, a)` are bitwise equal and
/// relabeled tables give identical results.
pub fn mutual_information_table(t: &ContingencyTable) -> f64 {
    let n = t.n_elements();
    let rows = t.row_sums();
    let cols = t.col_sums();
    let mut terms: Vec<(usize, usize, usize)> = t
        .cells()
        .iter()
        .map(|&(r, c, count)| {
            let (x, y) = (rows[r], cols[c]);
            (count, x.min(y), x.max(y))
        })
        .collect();
    terms.sort_unstable();
    let nf = n as f64;
    let acc: NeumaierSum = terms
        .iter()
        .map(|&(count, x, y)| {
            let num = (count as u128 * n as u128) as f64;
            let den = (x as u128 * y as u128) as f64;
            (count as f64 / nf) * (num / den).ln()
        })
        .collect();
    acc.value()
}

/// Mutual information between two clusterings of the same elements, in nats.
pub fn mutual_information(a: &Clustering, b: &Clustering) -> Result<f64> {
    Ok(mutual_information_table(&contingency(a, b)?))
}

/// Bound from the entropy chain
/// `min <= sqrt <= sum <= max <= max(log K) <= log N` for actual clusterings.
pub fn entropy_bound(normalizer: MiNormalizer, a: &Clustering, b: &Clustering) -> f64 {
    match normalizer {
        MiNormalizer::MaxLogK => (a.n_clusters().max(b.n_clusters()) as f64).ln(),
        MiNormalizer::LogN => (a.n_elements() as f64).ln(),
        other => other.combine(a.entropy(), b.entropy()),
    }
}

/// Normalized mutual information.
pub fn nmi(a: &Clustering, b: &Clustering, normalizer: MiNormalizer) -> Result<f64> {
    let mi = mutual_information(a, b)?;
    let bound = entropy_bound(normalizer, a, b);
    if bound <= 0.0 {
        return Err(Error::UndefinedNormalization(format!(
            "{normalizer} bound is 0 (both clusterings carry no information)"
        )));
    }
    Ok(mi / bound)
}

/// `(n/N) log(n/N)` for `n = 0..=N`, with `0 log 0 = 0`.
fn xlogx_table(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..=n)
        .map(|i| {
            if i == 0 {
                0.0
            } else {
                let p = i as f64 / nf;
                p * p.ln()
            }
        })
        .collect()
}

/// `sum_n P(n) (n/N) log(n/N)` for the overlap of an `a`- and a `b`-cluster.
fn overlap_term(n: usize, a: usize, b: usize, xlogx: &[f64], buf: &mut Vec<f64>) -> f64 {
    let lo = fill_pmf(n, a, b, buf);
    let mut acc = NeumaierSum::new();
    for (i, &p) in buf.iter().enumerate() {
        let v = lo + i;
        if v > 0 {
            acc.add(p * xlogx[v]);
        }
    }
    acc.value()
}

/// Distinct sizes in ascending order with their multiplicities.
fn size_histogram(sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for s in sorted {
        match out.last_mut() {
            Some((v, c)) if *v == s => *c += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Expected MI when elements are shuffled between clusters of fixed sizes.
pub fn expected_mi_perm(sizes_a: &[usize], sizes_b: &[usize], n: usize) -> Result<f64> {
    validate_sizes(sizes_a, n)?;
    validate_sizes(sizes_b, n)?;
    let nf = n as f64;
    let hist_a = size_histogram(sizes_a);
    let hist_b = size_histogram(sizes_b);
    let mut buf = Vec::new();
    let mut acc = NeumaierSum::new();
    for &(a, ca) in &hist_a {
        for &(b, cb) in &hist_b {
            let lo = fill_pmf(n, a, b, &mut buf);
            let mut cell = NeumaierSum::new();
            let ab = (a as u128 * b as u128) as f64;
            for (i, &p) in buf.iter().enumerate() {
                let v = lo + i;
                if v == 0 {
                    continue;
                }
                let ratio = (v as u128 * n as u128) as f64 / ab;
                cell.add(p * (v as f64 / nf) * ratio.ln());
            }
            acc.add((ca * cb) as f64 * cell.value());
        }
    }
    Ok(acc.value())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return domain(format!("cluster count {k} outside 1..={n}"));
    }
    Ok(())
}

/// Expected number of clusters of each size `a = 0..=N` in a uniformly random
/// `k`-cluster partition: `C(N, a) S(N - a, k - 1) / S(N, k)`.
fn num_size_weights(k: usize, n: usize) -> Result<Vec<f64>> {
    check_k(k, n)?;
    let table = stirling_table(n)?;
    let ln_total = table.ln(n, k);
    let mut w = vec![0.0; n + 1];
    for (a, slot) in w.iter_mut().enumerate().take(n - k + 2).skip(1) {
        let ln_rest = table.ln(n - a, k - 1);
        if ln_rest > f64::NEG_INFINITY {
            *slot = (ln_binomial_unchecked(n, a) + ln_rest - ln_total).exp();
        }
    }
    Ok(w)
}

/// Expected number of clusters of each size in a uniformly random partition:
/// `C(N, a) B_{N - a} / B_N`.
fn all_size_weights(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("need at least one element");
    }
    let bell = bell_sequence(n)?;
    let ln_total = bell.ln(n);
    let mut w = vec![0.0; n + 1];
    for (a, slot) in w.iter_mut().enumerate().skip(1) {
        *slot = (ln_binomial_unchecked(n, a) + bell.ln(n - a) - ln_total).exp();
    }
    Ok(w)
}

fn expected_entropy_from_weights(w: &[f64], n: usize) -> f64 {
    let xlogx = xlogx_table(n);
    let acc: NeumaierSum = w.iter().enumerate().skip(1).map(|(a, &wa)| -wa * xlogx[a]).collect();
    acc.value()
}

/// Expected joint entropy for independent clusterings with per-size weights
/// `wa` and `wb`. Rows are evaluated in parallel and merged in row order.
fn expected_joint_entropy(wa: &[f64], wb: &[f64], n: usize) -> f64 {
    let xlogx = xlogx_table(n);
    let rows: Vec<NeumaierSum> = (1..=n)
        .into_par_iter()
        .map_init(Vec::new, |buf, a| {
            let mut row = NeumaierSum::new();
            if wa[a] == 0.0 {
                return row;
            }
            for (b, &w) in wb.iter().enumerate().skip(1) {
                if w == 0.0 {
                    continue;
                }
                row.add(wa[a] * w * overlap_term(n, a, b, &xlogx, buf));
            }
            row
        })
        .collect();
    let mut total = NeumaierSum::new();
    for r in &rows {
        total.merge(r);
    }
    -total.value()
}

/// Same sum with a single weight vector, folding the `(a, b)` and `(b, a)`
/// terms together since the overlap law is symmetric in the two sizes.
fn expected_joint_entropy_symmetric(w: &[f64], n: usize) -> f64 {
    let xlogx = xlogx_table(n);
    let rows: Vec<NeumaierSum> = (1..=n)
        .into_par_iter()
        .map_init(Vec::new, |buf, a| {
            let mut row = NeumaierSum::new();
            if w[a] == 0.0 {
                return row;
            }
            for b in 1..a {
                if w[b] != 0.0 {
                    row.add(2.0 * w[a] * w[b] * overlap_term(n, a, b, &xlogx, buf));
                }
            }
            row.add(w[a] * w[a] * overlap_term(n, a, a, &xlogx, buf));
            row
        })
        .collect();
    let mut total = NeumaierSum::new();
    for r in &rows {
        total.merge(r);
    }
    -total.value()
}

/// Expected joint entropy of a random clustering (weights `w`) against a fixed one.
fn expected_joint_entropy_onesided(w: &[f64], reference_sizes: &[usize], n: usize) -> f64 {
    let xlogx = xlogx_table(n);
    let hist = size_histogram(reference_sizes);
    let mut buf = Vec::new();
    let mut total = NeumaierSum::new();
    for (a, &wa) in w.iter().enumerate().skip(1) {
        if wa == 0.0 {
            continue;
        }
        for &(g, count) in &hist {
            total.add(wa * count as f64 * overlap_term(n, a, g, &xlogx, &mut buf));
        }
    }
    -total.value()
}

/// Expected partition entropy of a uniformly random `k`-cluster partition.
pub fn expected_entropy_num(k: usize, n: usize) -> Result<f64> {
    Ok(expected_entropy_from_weights(&num_size_weights(k, n)?, n))
}

/// Expected joint entropy of two independent uniform clusterings with `k_a`, `k_b` clusters.
pub fn expected_joint_entropy_num(k_a: usize, k_b: usize, n: usize) -> Result<f64> {
    let wa = num_size_weights(k_a, n)?;
    let wb = num_size_weights(k_b, n)?;
    Ok(expected_joint_entropy(&wa, &wb, n))
}

/// Expected MI between independent uniform clusterings with `k_a` and `k_b` clusters.
///
/// `O(N^3)`; the outer loop runs on the rayon pool with a fixed-order reduction,
/// so the result is bitwise independent of the thread count.
pub fn expected_mi_num(k_a: usize, k_b: usize, n: usize) -> Result<f64> {
    let wa = num_size_weights(k_a, n)?;
    let wb = num_size_weights(k_b, n)?;
    let ha = expected_entropy_from_weights(&wa, n);
    let hb = expected_entropy_from_weights(&wb, n);
    Ok(ha + hb - expected_joint_entropy(&wa, &wb, n))
}

/// Expected partition entropy of a uniformly random partition of `n` elements.
pub fn expected_entropy_all(n: usize) -> Result<f64> {
    Ok(expected_entropy_from_weights(&all_size_weights(n)?, n))
}

/// Expected joint entropy of two independent uniformly random partitions.
pub fn expected_joint_entropy_all(n: usize) -> Result<f64> {
    Ok(expected_joint_entropy_symmetric(&all_size_weights(n)?, n))
}

/// Unfolded double sum behind [`expected_joint_entropy_all`], kept for cross-checking.
pub fn expected_joint_entropy_all_unfolded(n: usize) -> Result<f64> {
    let w = all_size_weights(n)?;
    Ok(expected_joint_entropy(&w, &w, n))
}

/// Expected MI between two independent uniformly random partitions.
pub fn expected_mi_all(n: usize) -> Result<f64> {
    if n < 2 {
        return domain(format!("expected_mi_all needs N >= 2, got {n}"));
    }
    let w = all_size_weights(n)?;
    let h = expected_entropy_from_weights(&w, n);
    Ok(2.0 * h - expected_joint_entropy_symmetric(&w, n))
}

/// Expected MI of a random `k_a`-cluster partition against a fixed reference.
pub fn expected_mi_num_onesided(k_a: usize, n: usize, reference: &Clustering) -> Result<f64> {
    expected_mi_num_onesided_sizes(k_a, n, &reference.size_sequence())
}

pub fn expected_mi_num_onesided_sizes(k_a: usize, n: usize, reference_sizes: &[usize]) -> Result<f64> {
    validate_sizes(reference_sizes, n)?;
    let w = num_size_weights(k_a, n)?;
    let ha = expected_entropy_from_weights(&w, n);
    let hg = entropy_nats(reference_sizes, n);
    Ok(ha + hg - expected_joint_entropy_onesided(&w, reference_sizes, n))
}

/// Expected MI of a uniformly random partition against a fixed reference.
pub fn expected_mi_all_onesided(n: usize, reference: &Clustering) -> Result<f64> {
    expected_mi_all_onesided_sizes(n, &reference.size_sequence())
}

pub fn expected_mi_all_onesided_sizes(n: usize, reference_sizes: &[usize]) -> Result<f64> {
    validate_sizes(reference_sizes, n)?;
    let w = all_size_weights(n)?;
    let ha = expected_entropy_from_weights(&w, n);
    let hg = entropy_nats(reference_sizes, n);
    Ok(ha + hg - expected_joint_entropy_onesided(&w, reference_sizes, n))
}

/// Bound for the fixed-count model from cluster counts alone.
pub fn mi_max_bound_num(normalizer: MiNormalizer, k_a: usize, k_b: usize) -> Result<f64> {
    if normalizer == MiNormalizer::LogN {
        return Err(Error::InvalidSpec(
            "the fixed-count model bounds MI by log K, not log N".into(),
        ));
    }
    let bound = normalizer.combine((k_a as f64).ln(), (k_b as f64).ln());
    nonzero_bound(bound, normalizer)
}

/// Bound for the all-clusterings model: `log N` whatever the normalizer.
pub fn mi_max_bound_all(n: usize) -> Result<f64> {
    nonzero_bound((n as f64).ln(), MiNormalizer::LogN)
}

fn nonzero_bound(bound: f64, normalizer: MiNormalizer) -> Result<f64> {
    if bound > 0.0 {
        Ok(bound)
    } else {
        Err(Error::UndefinedNormalization(format!(
            "{normalizer} bound is 0 (both clusterings carry no information)"
        )))
    }
}

/// Maximum MI used by `spec` for the pair `(a, b)`.
///
/// Models none and perm take the bound from the actual entropies. The
/// fixed-count model uses `log K` in place of each random clustering's entropy;
/// one-sided, the reference keeps its actual entropy (or `log K_G` for
/// `maxlogk`). The all-clusterings model always uses `log N`.
pub fn mi_max_bound(spec: &MiModelSpec, a: &Clustering, b: &Clustering) -> Result<f64> {
    spec.validate()?;
    let normalizer = spec.normalizer;
    match (spec.model, spec.sided) {
        (Model::None | Model::Perm, _) => nonzero_bound(entropy_bound(normalizer, a, b), normalizer),
        (Model::Num, Sidedness::TwoSided) => mi_max_bound_num(normalizer, a.n_clusters(), b.n_clusters()),
        (Model::Num, Sidedness::OneSided) => {
            let (random, fixed) = match spec.reference {
                Some(ReferenceSide::A) => (b, a),
                _ => (a, b),
            };
            let log_k = (random.n_clusters() as f64).ln();
            let bound = match normalizer {
                MiNormalizer::MaxLogK => log_k.max((fixed.n_clusters() as f64).ln()),
                other => other.combine(log_k, fixed.entropy()),
            };
            nonzero_bound(bound, normalizer)
        }
        (Model::All, _) => mi_max_bound_all(a.n_elements()),
    }
}

/// Expected MI for the pair `(a, b)` under `spec`. Model none gives 0.
pub fn expected_mi(a: &Clustering, b: &Clustering, spec: &MiModelSpec) -> Result<f64> {
    spec.validate()?;
    if a.n_elements() != b.n_elements() {
        return Err(Error::ElementMismatch {
            symmetric_difference: a.n_elements().abs_diff(b.n_elements()),
        });
    }
    let n = a.n_elements();
    let (random, fixed) = match spec.reference {
        Some(ReferenceSide::A) => (b, a),
        _ => (a, b),
    };
    match (spec.model, spec.sided) {
        (Model::None, _) => Ok(0.0),
        (Model::Perm, _) => expected_mi_perm(&a.size_sequence(), &b.size_sequence(), n),
        (Model::Num, Sidedness::TwoSided) => expected_mi_num(a.n_clusters(), b.n_clusters(), n),
        (Model::Num, Sidedness::OneSided) => {
            expected_mi_num_onesided_sizes(random.n_clusters(), n, &fixed.size_sequence())
        }
        (Model::All, Sidedness::TwoSided) => expected_mi_all(n),
        (Model::All, Sidedness::OneSided) => expected_mi_all_onesided_sizes(n, &fixed.size_sequence()),
    }
}

/// `(MI - E) / (max - E)` under `spec`; with model none this is the NMI.
pub fn adjusted_mi(a: &Clustering, b: &Clustering, spec: &MiModelSpec) -> Result<f64> {
    let bound = mi_max_bound(spec, a, b)?;
    let expectation = expected_mi(a, b, spec)?;
    let mi = mutual_information(a, b)?;
    adjust(mi, expectation, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(blocks: &[&[usize]], n: usize) -> Clustering {
        let v: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Clustering::from_clusters(&v, n).unwrap()
    }

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn mi_examples() {
        let a = c(&[&[0, 1], &[2, 3]], 4);
        let b = c(&[&[0, 2], &[1, 3]], 4);
        assert!((mutual_information(&a, &a).unwrap() - LN2).abs() < 1e-15);
        assert_eq!(mutual_information(&a, &b).unwrap(), 0.0);
        assert_eq!(
            mutual_information(&a, &Clustering::one_cluster(4).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn nmi_examples() {
        let a = c(&[&[0, 1], &[2, 3]], 4);
        let b = c(&[&[0, 2], &[1, 3]], 4);
        for k in [
            MiNormalizer::Min,
            MiNormalizer::Sqrt,
            MiNormalizer::Sum,
            MiNormalizer::Max,
        ] {
            assert!((nmi(&a, &a, k).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((nmi(&a, &a, MiNormalizer::LogN).unwrap() - 0.5).abs() < 1e-15);
        for k in MiNormalizer::ALL {
            assert_eq!(nmi(&a, &b, k).unwrap(), 0.0);
        }
        let one = Clustering::one_cluster(4).unwrap();
        assert!(matches!(
            nmi(&one, &one, MiNormalizer::Max),
            Err(Error::UndefinedNormalization(_))
        ));
    }

    #[test]
    fn expected_mi_perm_examples() {
        // 8 of the 24 relabelings reproduce a (MI = log 2), the other 16 are independent.
        assert!((expected_mi_perm(&[2, 2], &[2, 2], 4).unwrap() - LN2 / 3.0).abs() < 1e-15);
        assert_eq!(expected_mi_perm(&[6], &[3, 2, 1], 6).unwrap(), 0.0);
        assert!((expected_mi_perm(&[1; 5], &[1; 5], 5).unwrap() - 5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn adjusted_mi_perm_example() {
        let a = c(&[&[0, 1], &[2, 3]], 4);
        let b = c(&[&[0, 2], &[1, 3]], 4);
        let spec = MiModelSpec::two_sided(Model::Perm, MiNormalizer::Sum);
        assert!((adjusted_mi(&a, &b, &spec).unwrap() + 0.5).abs() < 1e-14);
        assert!((adjusted_mi(&a, &a, &spec).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expected_entropy_num_examples() {
        assert_eq!(expected_entropy_num(1, 7).unwrap(), 0.0);
        assert!((expected_entropy_num(7, 7).unwrap() - 7f64.ln()).abs() < 1e-14);
        let direct = -(1.0f64 / 3.0) * (1.0f64 / 3.0).ln() - (2.0f64 / 3.0) * (2.0f64 / 3.0).ln();
        assert!((expected_entropy_num(2, 3).unwrap() - direct).abs() < 1e-15);
        assert!(expected_entropy_num(4, 3).is_err());
    }

    #[test]
    fn expected_mi_num_fixed_points() {
        assert_eq!(expected_mi_num(1, 1, 9).unwrap(), 0.0);
        assert!((expected_mi_num(9, 9, 9).unwrap() - 9f64.ln()).abs() < 1e-13);
        assert!(expected_mi_num(10, 2, 9).is_err());
    }

    #[test]
    fn expected_entropy_all_example() {
        assert_eq!(expected_entropy_all(1).unwrap(), 0.0);
        // weights 6/5, 3/5, 1/5 for sizes 1, 2, 3
        let h = |p: f64| -p * p.ln();
        let direct = 1.2 * h(1.0 / 3.0) + 0.6 * h(2.0 / 3.0);
        assert!((expected_entropy_all(3).unwrap() - direct).abs() < 1e-15);
        // average of H over the 5 partitions of a 3-set: (3 H(2/3, 1/3) + ln 3) / 5
        let h21 = h(2.0 / 3.0) + h(1.0 / 3.0);
        assert!((direct - (3.0 * h21 + 3f64.ln()) / 5.0).abs() < 1e-15);
        assert!((direct - 0.601631).abs() < 1e-6);
    }

    #[test]
    fn symmetric_fold_matches_unfolded_sum() {
        for n in [2usize, 5, 12, 40] {
            let folded = expected_joint_entropy_all(n).unwrap();
            let unfolded = expected_joint_entropy_all_unfolded(n).unwrap();
            assert!((folded - unfolded).abs() <= 1e-15 * folded.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn one_sided_fixed_points() {
        let one = Clustering::one_cluster(6).unwrap();
        assert!(expected_mi_num_onesided(3, 6, &one).unwrap().abs() < 1e-15);
        assert!(expected_mi_all_onesided(6, &one).unwrap().abs() < 1e-15);
        let g = Clustering::from_sizes(&[3, 2, 1]).unwrap();
        assert!((expected_mi_num_onesided(6, 6, &g).unwrap() - g.entropy()).abs() < 1e-14);
        let single = Clustering::singletons(6).unwrap();
        assert!((expected_mi_all_onesided(6, &single).unwrap() - expected_entropy_all(6).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn max_bound_examples() {
        let a = Clustering::from_sizes(&[2, 2]).unwrap();
        let b = Clustering::from_sizes(&[1, 3]).unwrap();
        let all = MiModelSpec::two_sided(Model::All, MiNormalizer::Min);
        assert_eq!(mi_max_bound(&all, &a, &b).unwrap(), 4f64.ln());
        assert_eq!(all.effective_normalizer(), MiNormalizer::LogN);
        assert_eq!(mi_max_bound_num(MiNormalizer::Max, 2, 8).unwrap(), 8f64.ln());
        let perm = MiModelSpec::two_sided(Model::Perm, MiNormalizer::Sum);
        let expected = 0.5 * (LN2 + b.entropy());
        assert!((mi_max_bound(&perm, &a, &b).unwrap() - expected).abs() < 1e-15);
        let bad = MiModelSpec::two_sided(Model::Num, MiNormalizer::LogN);
        assert!(matches!(mi_max_bound(&bad, &a, &b), Err(Error::InvalidSpec(_))));
        let one = Clustering::one_cluster(4).unwrap();
        let num = MiModelSpec::two_sided(Model::Num, MiNormalizer::Max);
        assert!(matches!(
            mi_max_bound(&num, &one, &one),
            Err(Error::UndefinedNormalization(_))
        ));
    }

    #[test]
    fn model_none_reduces_to_nmi() {
        let a = Clustering::from_labels(&[0, 0, 1, 1, 2, 2, 2]).unwrap();
        let b = Clustering::from_labels(&[0, 1, 1, 1, 2, 2, 0]).unwrap();
        for k in MiNormalizer::ALL {
            let spec = MiModelSpec::two_sided(Model::None, k);
            assert_eq!(adjusted_mi(&a, &b, &spec).unwrap(), nmi(&a, &b, k).unwrap());
        }
    }

    #[test]
    fn ami_of_self_is_one_when_bound_is_attained() {
        let a = Clustering::from_sizes(&[3, 3, 3]).unwrap();
        for model in [Model::Perm, Model::Num] {
            for k in [
                MiNormalizer::Min,
                MiNormalizer::Sqrt,
                MiNormalizer::Sum,
                MiNormalizer::Max,
            ] {
                let v = adjusted_mi(&a, &a, &MiModelSpec::two_sided(model, k)).unwrap();
                assert!((v - 1.0).abs() < 1e-12, "{model} {k}: {v}");
            }
        }
        let s = Clustering::singletons(9).unwrap();
        let v = adjusted_mi(&s, &s, &MiModelSpec::two_sided(Model::All, MiNormalizer::Max)).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mi_is_bitwise_symmetric() {
        let a = Clustering::from_labels(&[0, 0, 1, 1, 2, 2, 2, 3, 3, 0]).unwrap();
        let b = Clustering::from_labels(&[5, 1, 1, 1, 2, 2, 0, 0, 4, 4]).unwrap();
        assert_eq!(
            mutual_information(&a, &b).unwrap().to_bits(),
            mutual_information(&b, &a).unwrap().to_bits()
        );
    }
}
