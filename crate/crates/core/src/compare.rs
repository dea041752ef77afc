//! One-call comparison of two clusterings, and ranking of clustering pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::{Clustering, LabeledClustering, LogBase};
use crate::error::Result;
use crate::model::{adjust, Evaluation, Model, ReferenceSide, Sidedness};
use crate::mutual_info::{expected_mi, mi_max_bound, mutual_information, MiModelSpec, MiNormalizer};
use crate::rand_index::{expected_rand, rand_index, RandModelSpec};
use crate::random_models::Measure;

/// What to compute and against which random model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub measure: Measure,
    pub model: Model,
    pub sided: Sidedness,
    pub reference: Option<ReferenceSide>,
    /// Ignored by the Rand index.
    pub normalizer: MiNormalizer,
    /// Applied to MI quantities only.
    pub log_base: LogBase,
    pub evaluation: Evaluation,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            measure: Measure::Rand,
            model: Model::Perm,
            sided: Sidedness::TwoSided,
            reference: None,
            normalizer: MiNormalizer::Max,
            log_base: LogBase::E,
            evaluation: Evaluation::Exact,
        }
    }
}

impl CompareOptions {
    pub fn rand(model: Model) -> Self {
        Self {
            model,
            ..Self::default()
        }
    }

    pub fn mi(model: Model, normalizer: MiNormalizer) -> Self {
        Self {
            measure: Measure::Mi,
            model,
            normalizer,
            ..Self::default()
        }
    }

    pub fn one_sided(mut self, reference: ReferenceSide) -> Self {
        self.sided = Sidedness::OneSided;
        self.reference = Some(reference);
        self
    }

    fn rand_spec(&self) -> RandModelSpec {
        RandModelSpec {
            model: self.model,
            sided: self.sided,
            reference: self.reference,
            evaluation: self.evaluation,
        }
    }

    fn mi_spec(&self) -> MiModelSpec {
        MiModelSpec {
            model: self.model,
            sided: self.sided,
            normalizer: self.normalizer,
            reference: self.reference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonResult {
    pub measure: Measure,
    pub model: Model,
    pub sided: Sidedness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceSide>,
    /// Normalizer actually applied; absent for the Rand index.
    pub normalizer: Option<MiNormalizer>,
    pub raw: f64,
    pub expectation: f64,
    pub max_bound: f64,
    pub adjusted: f64,
    pub n_elements: usize,
    pub k_a: usize,
    pub k_b: usize,
}

/// Scores `a` against `b`. Model none has expectation 0, so `adjusted` is the
/// raw Rand index or the normalized MI.
pub fn compare(a: &Clustering, b: &Clustering, options: &CompareOptions) -> Result<ComparisonResult> {
    let (raw, expectation, max_bound, normalizer) = match options.measure {
        Measure::Rand => {
            let spec = options.rand_spec();
            (rand_index(a, b)?, expected_rand(a, b, &spec)?, 1.0, None)
        }
        Measure::Mi => {
            let spec = options.mi_spec();
            (
                mutual_information(a, b)?,
                expected_mi(a, b, &spec)?,
                mi_max_bound(&spec, a, b)?,
                Some(spec.effective_normalizer()),
            )
        }
    };
    let adjusted = adjust(raw, expectation, max_bound)?;
    let scale = |x: f64| match options.measure {
        Measure::Rand => x,
        Measure::Mi => options.log_base.from_nats(x),
    };
    Ok(ComparisonResult {
        measure: options.measure,
        model: options.model,
        sided: options.sided,
        reference: options.reference,
        normalizer,
        raw: scale(raw),
        expectation: scale(expectation),
        max_bound: scale(max_bound),
        adjusted,
        n_elements: a.n_elements(),
        k_a: a.n_clusters(),
        k_b: b.n_clusters(),
    })
}

/// [`compare`] after matching elements by id.
pub fn compare_labeled(
    a: &LabeledClustering,
    b: &LabeledClustering,
    options: &CompareOptions,
) -> Result<ComparisonResult> {
    let b_aligned = a.align(b)?;
    compare(a.clustering(), &b_aligned, options)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedPair {
    pub a: String,
    pub b: String,
    #[serde(flatten)]
    pub result: ComparisonResult,
}

/// Scores every unordered pair and sorts by adjusted score, highest first.
/// Ties keep input pair order.
pub fn rank(clusterings: &[(String, LabeledClustering)], options: &CompareOptions) -> Result<Vec<RankedPair>> {
    let pairs: Vec<(usize, usize)> = (0..clusterings.len())
        .flat_map(|i| (i + 1..clusterings.len()).map(move |j| (i, j)))
        .collect();
    let mut ranked = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (name_a, a) = &clusterings[i];
            let (name_b, b) = &clusterings[j];
            Ok(RankedPair {
                a: name_a.clone(),
                b: name_b.clone(),
                result: compare_labeled(a, b, options)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|x, y| y.result.adjusted.total_cmp(&x.result.adjusted));
    Ok(ranked)
}

/// Tab-separated table with 6 decimals.
pub fn rank_to_tsv(ranked: &[RankedPair]) -> String {
    let mut out = String::from("a\tb\traw\texpectation\tmax_bound\tadjusted\n");
    for r in ranked {
        out.push_str(&format!(
            "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\n",
            r.a, r.b, r.result.raw, r.result.expectation, r.result.max_bound, r.result.adjusted
        ));
    }
    out
}
