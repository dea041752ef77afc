//! Partitions, contingency tables, pair counts and entropies.
//!
//! A [`Clustering`] is a partition of the elements `0..N`. Cluster indices are
//! assigned in order of first appearance, so two clusterings describe the same
//! partition exactly when their memberships are equal. String element ids live
//! in [`LabeledClustering`], which aligns two clusterings by id before comparing.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::summation::NeumaierSum;

/// Output logarithm base. Everything is computed in nats and rescaled at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    E,
    Two,
    Ten,
}

impl LogBase {
    /// Converts a quantity measured in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
            LogBase::Ten => nats / std::f64::consts::LN_10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    membership: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Clustering {
    /// Groups positions by label. Cluster indices follow first appearance.
    pub fn from_labels<L: Hash + Eq>(labels: &[L]) -> Result<Self> {
        if labels.is_empty() {
            return domain("a clustering needs at least one element");
        }
        let mut index: HashMap<&L, usize> = HashMap::new();
        let mut membership = Vec::with_capacity(labels.len());
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (element, label) in labels.iter().enumerate() {
            let next = index.len();
            let k = *index.entry(label).or_insert(next);
            if k == clusters.len() {
                clusters.push(Vec::new());
            }
            clusters[k].push(element);
            membership.push(k);
        }
        Ok(Self { membership, clusters })
    }

    /// Builds a clustering from explicit blocks over `0..n`.
    pub fn from_clusters(clusters: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (k, block) in clusters.iter().enumerate() {
            if block.is_empty() {
                return domain(format!("cluster {k} is empty"));
            }
            for &e in block {
                if e >= n {
                    return domain(format!("element {e} outside 0..{n}"));
                }
                if labels[e] != usize::MAX {
                    return domain(format!("element {e} appears in two clusters"));
                }
                labels[e] = k;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return domain(format!("element {e} is not covered by any cluster"));
        }
        Self::from_labels(&labels)
    }

    /// Every element in one cluster.
    pub fn one_cluster(n: usize) -> Result<Self> {
        Self::from_labels(&vec![0usize; n])
    }

    /// Every element in its own cluster.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// Contiguous blocks of the given sizes: `[2, 1]` gives `{0,1},{2}`.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.contains(&0) {
            return domain("cluster sizes must be positive");
        }
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
            .collect();
        Self::from_labels(&labels)
    }

    pub fn n_elements(&self) -> usize {
        self.membership.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    /// Cluster index of each element.
    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn size_sequence(&self) -> Vec<usize> {
        self.clusters.iter().map(Vec::len).collect()
    }

    /// Number of element pairs sharing a cluster.
    pub fn co_clustered_pairs(&self) -> u128 {
        co_clustered_pairs(&self.size_sequence())
    }

    /// Partition entropy in nats.
    pub fn entropy(&self) -> f64 {
        entropy_nats(&self.size_sequence(), self.n_elements())
    }
}

/// `clustering_from_labels`: element `i` carries `labels[i]`.
pub fn clustering_from_labels<L: Hash + Eq>(labels: &[L]) -> Result<Clustering> {
    Clustering::from_labels(labels)
}

/// A clustering whose elements carry string ids.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledClustering {
    ids: Vec<String>,
    cluster_labels: Vec<String>,
    clustering: Clustering,
}

impl LabeledClustering {
    /// Builds from `(element_id, cluster_label)` records. Duplicate ids are rejected.
    pub fn from_pairs<I, E, L>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, L)>,
        E: Into<String>,
        L: Into<String>,
    {
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        let mut seen = HashSet::new();
        for (id, label) in pairs {
            let id = id.into();
            if !seen.insert(id.clone()) {
                return domain(format!("element id {id:?} listed twice"));
            }
            ids.push(id);
            labels.push(label.into());
        }
        let clustering = Clustering::from_labels(&labels)?;
        let mut cluster_labels = vec![String::new(); clustering.n_clusters()];
        for (label, &k) in labels.into_iter().zip(clustering.membership()) {
            if cluster_labels[k].is_empty() {
                cluster_labels[k] = label;
            }
        }
        Ok(Self {
            ids,
            cluster_labels,
            clustering,
        })
    }

    /// Wraps an unlabeled clustering, naming element `i` as `"i"` and cluster `k` as `"k"`.
    pub fn from_clustering(clustering: Clustering) -> Self {
        Self {
            ids: (0..clustering.n_elements()).map(|i| i.to_string()).collect(),
            cluster_labels: (0..clustering.n_clusters()).map(|k| k.to_string()).collect(),
            clustering,
        }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn clustering(&self) -> &Clustering {
        &self.clustering
    }

    /// Original label of cluster `k`.
    pub fn cluster_label(&self, k: usize) -> &str {
        &self.cluster_labels[k]
    }

    /// `(element_id, cluster_label)` records in element order.
    pub fn records(&self) -> impl Iterator<Item = (&str, &str)> {
        self.ids
            .iter()
            .zip(self.clustering.membership())
            .map(|(id, &k)| (id.as_str(), self.cluster_labels[k].as_str()))
    }

    /// Re-expresses `other` over this clustering's element order.
    pub fn align(&self, other: &LabeledClustering) -> Result<Clustering> {
        let position: HashMap<&str, usize> = other.ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let missing = self.ids.iter().filter(|id| !position.contains_key(id.as_str())).count();
        let shared = self.ids.len() - missing;
        let extra = other.ids.len() - shared;
        if missing + extra > 0 {
            return Err(Error::ElementMismatch {
                symmetric_difference: missing + extra,
            });
        }
        let labels: Vec<usize> = self
            .ids
            .iter()
            .map(|id| other.clustering.membership[position[id.as_str()]])
            .collect();
        Clustering::from_labels(&labels)
    }
}

/// Sparse cluster-overlap counts between two clusterings of the same elements.
///
/// Cells are stored row-major over first-appearance cluster indices and only
/// when nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    n: usize,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
    cells: Vec<(usize, usize, usize)>,
}

impl ContingencyTable {
    pub fn n_elements(&self) -> usize {
        self.n
    }

    /// Cluster sizes of the row clustering.
    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    /// Cluster sizes of the column clustering.
    pub fn col_sums(&self) -> &[usize] {
        &self.col_sums
    }

    /// Nonzero cells `(row, col, count)` in row-major order.
    pub fn cells(&self) -> &[(usize, usize, usize)] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map_or(0, |i| self.cells[i].2)
    }

    /// Same table with rows and columns swapped.
    pub fn transpose(&self) -> ContingencyTable {
        let mut cells: Vec<_> = self.cells.iter().map(|&(r, c, n)| (c, r, n)).collect();
        cells.sort_unstable();
        ContingencyTable {
            n: self.n,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            cells,
        }
    }
}

/// Overlap table of two clusterings over the same elements.
pub fn contingency(a: &Clustering, b: &Clustering) -> Result<ContingencyTable> {
    if a.n_elements() != b.n_elements() {
        return Err(Error::ElementMismatch {
            symmetric_difference: a.n_elements().abs_diff(b.n_elements()),
        });
    }
    let mut keys: Vec<(usize, usize)> = a.membership.iter().copied().zip(b.membership.iter().copied()).collect();
    keys.sort_unstable();
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for key in keys {
        match cells.last_mut() {
            Some(last) if (last.0, last.1) == key => last.2 += 1,
            _ => cells.push((key.0, key.1, 1)),
        }
    }
    Ok(ContingencyTable {
        n: a.n_elements(),
        row_sums: a.size_sequence(),
        col_sums: b.size_sequence(),
        cells,
    })
}

/// Pair counts of two clusterings: `n11` pairs together in both, `n10` only in
/// the row clustering, `n01` only in the column clustering, `n00` in neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub n11: u128,
    pub n10: u128,
    pub n01: u128,
    pub n00: u128,
    /// Co-clustered pairs of the row clustering (`n11 + n10`).
    pub q1_a: u128,
    /// Co-clustered pairs of the column clustering (`n11 + n01`).
    pub q1_b: u128,
}

impl PairCounts {
    pub fn total(&self) -> u128 {
        self.n11 + self.n10 + self.n01 + self.n00
    }
}

#[inline]
pub(crate) fn choose2(n: usize) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

/// `sum_k C(c_k, 2)` over a size sequence.
pub fn co_clustered_pairs(sizes: &[usize]) -> u128 {
    sizes.iter().map(|&s| choose2(s)).sum()
}

pub fn pair_counts(t: &ContingencyTable) -> PairCounts {
    let n11: u128 = t.cells.iter().map(|&(_, _, c)| choose2(c)).sum();
    let q1_a = co_clustered_pairs(&t.row_sums);
    let q1_b = co_clustered_pairs(&t.col_sums);
    let n10 = q1_a - n11;
    let n01 = q1_b - n11;
    let n00 = choose2(t.n) - n11 - n10 - n01;
    PairCounts {
        n11,
        n10,
        n01,
        n00,
        q1_a,
        q1_b,
    }
}

/// `-sum (c/N) log(c/N)` in nats over counts summing to `n`. Summed in sorted
/// order so the result does not depend on the order of `counts`.
pub(crate) fn entropy_nats(counts: &[usize], n: usize) -> f64 {
    let mut sorted: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
    sorted.sort_unstable();
    let nf = n as f64;
    let acc: NeumaierSum = sorted
        .iter()
        .map(|&c| {
            let p = c as f64 / nf;
            -p * p.ln()
        })
        .collect();
    acc.value().max(0.0)
}

/// Checks that `sizes` are positive and sum to `n`.
pub(crate) fn validate_sizes(sizes: &[usize], n: usize) -> Result<()> {
    if sizes.is_empty() {
        return domain("empty size sequence");
    }
    if let Some(&bad) = sizes.iter().find(|&&s| s == 0 || s > n) {
        return domain(format!("cluster size {bad} invalid for N = {n}"));
    }
    let total: usize = sizes.iter().sum();
    if total != n {
        return domain(format!("cluster sizes sum to {total}, expected {n}"));
    }
    Ok(())
}

/// Partition entropy of a size sequence.
pub fn entropy(sizes: &[usize], n: usize, base: LogBase) -> Result<f64> {
    validate_sizes(sizes, n)?;
    Ok(base.from_nats(entropy_nats(sizes, n)))
}

/// Entropy of the cluster size sequence in bits.
pub fn size_sequence_entropy(c: &Clustering) -> f64 {
    LogBase::Two.from_nats(c.entropy())
}

/// `-sum_km (n_km/N) log(n_km/N)` over nonzero cells.
pub fn joint_entropy(t: &ContingencyTable, base: LogBase) -> f64 {
    let counts: Vec<usize> = t.cells.iter().map(|&(_, _, c)| c).collect();
    base.from_nats(entropy_nats(&counts, t.n))
}
