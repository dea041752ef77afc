//! Brute-force ground truth for small `N`.
//!
//! Partitions are enumerated as restricted growth strings in lexicographic
//! order. Expectations are averages over the enumerated ensembles: Rand index
//! values as exact rationals, information quantities as exact integer
//! combinations of `m ln m` terms that can be evaluated to any precision.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use dashu_float::DBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::clustering::{choose2, Clustering};
use crate::combinatorics::bell;
use crate::error::{domain, Error, Result};
use crate::random_models::Ensemble;

/// Largest `N` for full partition enumeration.
pub const ENUMERATION_CEILING: usize = 12;
/// Largest `N` for permutation orbits.
pub const ORBIT_CEILING: usize = 8;

/// Cluster codes with `codes[0] = 0` and `codes[i] <= 1 + max(codes[..i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictedGrowthString(Vec<usize>);

impl RestrictedGrowthString {
    pub fn codes(&self) -> &[usize] {
        &self.0
    }

    pub fn n_blocks(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn to_clustering(&self) -> Clustering {
        Clustering::from_labels(&self.0).expect("nonempty string")
    }
}

/// Lexicographic stream of all restricted growth strings of one length.
#[derive(Debug, Clone)]
pub struct Partitions {
    codes: Vec<usize>,
    // prefix_max[i] = max(codes[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: usize) -> Self {
        Self {
            codes: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.codes.len();
        for i in (1..n).rev() {
            if self.codes[i] <= self.prefix_max[i - 1] {
                self.codes[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.codes[i]);
                for j in i + 1..n {
                    self.codes[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = RestrictedGrowthString;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(RestrictedGrowthString(self.codes.clone()))
    }
}

fn check_ceiling(n: usize) -> Result<()> {
    if n == 0 {
        return domain("enumeration needs N >= 1");
    }
    if n > ENUMERATION_CEILING {
        let count = bell(n)
            .map(|b| format!("{:.6e}", b.value()))
            .unwrap_or_else(|_| "too many".to_string());
        return Err(Error::Ceiling(format!(
            "refusing to enumerate N = {n}: B_N = {count} partitions exceeds the ceiling N <= {ENUMERATION_CEILING}"
        )));
    }
    Ok(())
}

/// Every partition of `0..n`, each exactly once.
pub fn enumerate_all(n: usize) -> Result<Partitions> {
    check_ceiling(n)?;
    Ok(Partitions::new(n))
}

/// Every partition of `0..n` into exactly `k` blocks.
pub fn enumerate_fixed_k(n: usize, k: usize) -> Result<impl Iterator<Item = RestrictedGrowthString>> {
    check_ceiling(n)?;
    if k == 0 || k > n {
        return domain(format!("need 1 <= K <= N, got N = {n}, K = {k}"));
    }
    Ok(Partitions::new(n).filter(move |s| s.n_blocks() == k))
}

/// Heap's algorithm over element positions; yields `template` relabeled by
/// every permutation, `N!` items with multiplicity.
#[derive(Debug, Clone)]
pub struct PermOrbit {
    labels: Vec<usize>,
    stack: Vec<usize>,
    i: usize,
    started: bool,
}

impl Iterator for PermOrbit {
    type Item = Clustering;

    fn next(&mut self) -> Option<Clustering> {
        if !self.started {
            self.started = true;
            return Some(Clustering::from_labels(&self.labels).expect("nonempty"));
        }
        let n = self.labels.len();
        while self.i < n {
            if self.stack[self.i] < self.i {
                if self.i.is_multiple_of(2) {
                    self.labels.swap(0, self.i);
                } else {
                    self.labels.swap(self.stack[self.i], self.i);
                }
                self.stack[self.i] += 1;
                self.i = 1;
                return Some(Clustering::from_labels(&self.labels).expect("nonempty"));
            }
            self.stack[self.i] = 0;
            self.i += 1;
        }
        None
    }
}

pub fn enumerate_perm_orbit(template: &Clustering) -> Result<PermOrbit> {
    let n = template.n_elements();
    if n > ORBIT_CEILING {
        return Err(Error::Ceiling(format!(
            "refusing to enumerate {n}! permutations; orbits are limited to N <= {ORBIT_CEILING}"
        )));
    }
    Ok(PermOrbit {
        labels: template.membership().to_vec(),
        stack: vec![0; n],
        i: 1,
        started: false,
    })
}

/// A finite sum `sum_p r_p ln p` with rational coefficients over primes `p`.
/// Composite arguments are split into prime factors, so equal values have
/// equal representations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LnCombination {
    terms: BTreeMap<u64, BigRational>,
}

impl LnCombination {
    /// Adds `coefficient * ln m`.
    pub fn add_term(&mut self, m: u64, coefficient: BigRational) {
        if m <= 1 || coefficient.is_zero() {
            return;
        }
        for (p, e) in prime_factors(m) {
            let slot = self.terms.entry(p).or_insert_with(BigRational::zero);
            *slot += &coefficient * BigInt::from(e);
            if slot.is_zero() {
                self.terms.remove(&p);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&m, r)| (m, r))
    }

    /// Decimal value carrying `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> DBig {
        let working = digits + 20;
        let mut acc = decimal_int(&BigInt::zero(), working);
        for (&m, r) in &self.terms {
            let ln_m = decimal_int(&BigInt::from(m), working).ln();
            acc += ln_m * decimal_int(r.numer(), working) / decimal_int(r.denom(), working);
        }
        acc.with_precision(digits).value()
    }
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn decimal_int(x: &BigInt, precision: usize) -> DBig {
    DBig::from_str(&x.to_string())
        .expect("integer literal")
        .with_precision(precision)
        .value()
}

/// Exact value of an enumerated expectation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Rational(BigRational),
    Logarithmic(LnCombination),
}

impl ExactValue {
    pub fn to_decimal(&self, digits: usize) -> DBig {
        match self {
            ExactValue::Rational(r) => {
                let p = digits + 10;
                (decimal_int(r.numer(), p) / decimal_int(r.denom(), p))
                    .with_precision(digits)
                    .value()
            }
            ExactValue::Logarithmic(c) => c.to_decimal(digits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactValue::Logarithmic(c) => c.to_decimal(40).to_f64().value(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactValue::Rational(r) => Some(r),
            ExactValue::Logarithmic(_) => None,
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rational(r) => write!(f, "{r}"),
            ExactValue::Logarithmic(c) => write!(f, "{}", c.to_decimal(35)),
        }
    }
}

/// Quantity averaged by [`exact_expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMeasure {
    Rand,
    Mi,
    /// Entropy of the random clustering.
    Entropy,
    JointEntropy,
}

/// Distinct ensemble members with their multiplicities.
type Weighted = Vec<(Clustering, u64)>;

fn weighted_orbit(template: &Clustering) -> Result<Weighted> {
    let mut counts: HashMap<Clustering, u64> = HashMap::new();
    for c in enumerate_perm_orbit(template)? {
        *counts.entry(c).or_default() += 1;
    }
    let mut out: Weighted = counts.into_iter().collect();
    out.sort_by(|x, y| x.0.membership().cmp(y.0.membership()));
    Ok(out)
}

fn unweighted(iter: impl Iterator<Item = RestrictedGrowthString>) -> Weighted {
    iter.map(|s| (s.to_clustering(), 1)).collect()
}

/// Both sides of an ensemble as weighted lists; the second side is a single
/// fixed clustering for one-sided ensembles.
fn sides(ensemble: &Ensemble) -> Result<(Weighted, Weighted)> {
    let n = ensemble.n_elements();
    check_ceiling(n)?;
    let fixed = |c: &Clustering| vec![(c.clone(), 1)];
    Ok(match ensemble {
        Ensemble::Perm { a, b } => {
            if a.n_elements() != b.n_elements() {
                return Err(Error::InvalidSpec("clusterings differ in size".into()));
            }
            (weighted_orbit(a)?, weighted_orbit(b)?)
        }
        Ensemble::PermOneSided { template, reference } => {
            if template.n_elements() != reference.n_elements() {
                return Err(Error::InvalidSpec("template and reference differ in size".into()));
            }
            (weighted_orbit(template)?, fixed(reference))
        }
        Ensemble::Num { n, k_a, k_b } => (
            unweighted(enumerate_fixed_k(*n, *k_a)?),
            unweighted(enumerate_fixed_k(*n, *k_b)?),
        ),
        Ensemble::NumOneSided { k_a, reference } => (unweighted(enumerate_fixed_k(n, *k_a)?), fixed(reference)),
        Ensemble::All { n } => {
            let all = unweighted(enumerate_all(*n)?);
            (all.clone(), all)
        }
        Ensemble::AllOneSided { reference } => (unweighted(enumerate_all(n)?), fixed(reference)),
    })
}

fn total_weight(side: &Weighted) -> u64 {
    side.iter().map(|(_, w)| w).sum()
}

/// Bit `pair_index(i, j)` set when elements `i < j` share a cluster.
fn pair_mask(c: &Clustering) -> u128 {
    let m = c.membership();
    let mut mask = 0u128;
    let mut bit = 0;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i] == m[j] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

/// Size counts of every cell of the overlap table, indexed by size.
fn cell_size_counts(x: &Clustering, y: &Clustering, out: &mut [u64], grid: &mut Vec<usize>) {
    let ky = y.n_clusters();
    grid.clear();
    grid.resize(x.n_clusters() * ky, 0);
    for (&r, &c) in x.membership().iter().zip(y.membership()) {
        grid[r * ky + c] += 1;
    }
    for &cell in grid.iter() {
        out[cell] += 1;
    }
}

fn size_counts(c: &Clustering, out: &mut [u64], weight: u64) {
    for block in c.clusters() {
        out[block.len()] += weight;
    }
}

/// Builds `ln N - (1/N) sum_m counts[m] m ln m`, all divided by `total`.
fn entropy_like(n: usize, counts: &[u64], total: u64) -> LnCombination {
    let mut out = LnCombination::default();
    out.add_term(n as u64, BigRational::from_integer(1.into()));
    let scale = BigInt::from(n) * BigInt::from(total);
    for (m, &count) in counts.iter().enumerate().skip(2) {
        out.add_term(
            m as u64,
            -BigRational::new(BigInt::from(count) * BigInt::from(m), scale.clone()),
        );
    }
    out
}

/// Mean of `measure` over the enumerated `ensemble`.
///
/// Two-sided ensembles average over every ordered pair of members; one-sided
/// ensembles pair every member with the fixed reference.
pub fn exact_expectation(measure: OracleMeasure, ensemble: &Ensemble) -> Result<ExactValue> {
    let n = ensemble.n_elements();
    let (xs, ys) = sides(ensemble)?;
    let (wx, wy) = (total_weight(&xs), total_weight(&ys));
    match measure {
        OracleMeasure::Rand => {
            if n < 2 {
                return domain("the Rand index needs N >= 2");
            }
            let pairs = choose2(n);
            let y_masks: Vec<(u128, u64)> = ys.iter().map(|(c, w)| (pair_mask(c), *w)).collect();
            let agreements: u128 = xs
                .par_iter()
                .map(|(x, w)| {
                    let mx = pair_mask(x);
                    let row: u128 = y_masks
                        .iter()
                        .map(|&(my, v)| (pairs - (mx ^ my).count_ones() as u128) * v as u128)
                        .sum();
                    row * *w as u128
                })
                .sum();
            Ok(ExactValue::Rational(BigRational::new(
                BigInt::from(agreements),
                BigInt::from(pairs) * BigInt::from(wx) * BigInt::from(wy),
            )))
        }
        OracleMeasure::Entropy => {
            let mut counts = vec![0u64; n + 1];
            for (x, w) in &xs {
                size_counts(x, &mut counts, *w);
            }
            Ok(ExactValue::Logarithmic(entropy_like(n, &counts, wx)))
        }
        OracleMeasure::JointEntropy | OracleMeasure::Mi => {
            let joint = xs
                .par_iter()
                .map_init(
                    || (vec![0u64; n + 1], Vec::new()),
                    |(buf, grid), (x, w)| {
                        let mut row = vec![0u64; n + 1];
                        for (y, v) in &ys {
                            buf.iter_mut().for_each(|b| *b = 0);
                            cell_size_counts(x, y, buf, grid);
                            for (r, b) in row.iter_mut().zip(buf.iter()) {
                                *r += b * w * v;
                            }
                        }
                        row
                    },
                )
                .reduce(
                    || vec![0u64; n + 1],
                    |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
                );
            let h_joint = entropy_like(n, &joint, wx * wy);
            if measure == OracleMeasure::JointEntropy {
                return Ok(ExactValue::Logarithmic(h_joint));
            }
            // MI = H(X) + H(Y) - H(X, Y)
            let mut cx = vec![0u64; n + 1];
            let mut cy = vec![0u64; n + 1];
            xs.iter().for_each(|(x, w)| size_counts(x, &mut cx, *w));
            ys.iter().for_each(|(y, w)| size_counts(y, &mut cy, *w));
            let mut mi = entropy_like(n, &cx, wx);
            for (m, r) in entropy_like(n, &cy, wy).terms() {
                mi.add_term(m, r.clone());
            }
            for (m, r) in h_joint.terms() {
                mi.add_term(m, -r.clone());
            }
            Ok(ExactValue::Logarithmic(mi))
        }
    }
}

/// Expected Rand index through per-pair co-clustering probabilities, which
/// needs only one pass over each side.
pub fn exact_rand_factorized(ensemble: &Ensemble) -> Result<BigRational> {
    let n = ensemble.n_elements();
    if n < 2 {
        return domain("the Rand index needs N >= 2");
    }
    let (xs, ys) = sides(ensemble)?;
    let pairs = choose2(n) as usize;
    let together = |side: &Weighted| -> Vec<u64> {
        let mut counts = vec![0u64; pairs];
        for (c, w) in side {
            let mask = pair_mask(c);
            for (bit, count) in counts.iter_mut().enumerate() {
                if mask >> bit & 1 == 1 {
                    *count += w;
                }
            }
        }
        counts
    };
    let (tx, ty) = (together(&xs), together(&ys));
    let (wx, wy) = (total_weight(&xs) as u128, total_weight(&ys) as u128);
    let agreements: u128 = tx
        .iter()
        .zip(&ty)
        .map(|(&a, &b)| {
            let (a, b) = (a as u128, b as u128);
            a * b + (wx - a) * (wy - b)
        })
        .sum();
    Ok(BigRational::new(
        BigInt::from(agreements),
        BigInt::from(pairs) * BigInt::from(wx) * BigInt::from(wy),
    ))
}
