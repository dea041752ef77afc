//! Stirling numbers of the second kind, Bell numbers, binomials and the
//! hypergeometric distribution, exact for small arguments and in log space
//! beyond that.
//!
//! Tables are built on first use and shared through a process-wide cache.
//! A request past the cached size rebuilds a larger table; the previous
//! `Arc` stays valid for anyone still holding it.

mod bell;
mod binomial;
mod hypergeom;
mod log_real;
mod stirling;

use std::sync::{Arc, RwLock};

use num_bigint::BigUint;

pub use bell::BellSequence;
pub use binomial::{binomial_exact, log_binomial};
pub use hypergeom::{hypergeom_pmf, support as hypergeom_support};
pub use log_real::{log_add_exp, log_sum_exp, LogReal};
pub use stirling::StirlingTable;

pub(crate) use binomial::ln_binomial_unchecked;
pub(crate) use hypergeom::fill_pmf;

use crate::error::{domain, Result};

/// Largest `n` kept as exact big integers.
pub const EXACT_THRESHOLD: usize = 64;

/// Largest `n` the shared Stirling table will grow to (quadratic memory).
pub const STIRLING_N_LIMIT: usize = 4096;

/// Largest `n` the shared Bell sequence will grow to (quadratic time).
pub const BELL_N_LIMIT: usize = 20_000;

static STIRLING: RwLock<Option<Arc<StirlingTable>>> = RwLock::new(None);
static BELL: RwLock<Option<Arc<BellSequence>>> = RwLock::new(None);

fn grown_size(requested: usize, current: usize, limit: usize) -> usize {
    requested.max(current.saturating_mul(2)).max(EXACT_THRESHOLD).min(limit)
}

/// Shared Stirling table covering at least `n_max`.
pub fn stirling_table(n_max: usize) -> Result<Arc<StirlingTable>> {
    if n_max > STIRLING_N_LIMIT {
        return domain(format!(
            "Stirling table limited to n <= {STIRLING_N_LIMIT}, requested {n_max}"
        ));
    }
    if let Some(t) = STIRLING.read().unwrap().as_ref() {
        if t.n_max() >= n_max {
            return Ok(Arc::clone(t));
        }
    }
    let mut guard = STIRLING.write().unwrap();
    if let Some(t) = guard.as_ref() {
        if t.n_max() >= n_max {
            return Ok(Arc::clone(t));
        }
    }
    let current = guard.as_ref().map_or(0, |t| t.n_max());
    let table = Arc::new(StirlingTable::new(grown_size(n_max, current, STIRLING_N_LIMIT)));
    *guard = Some(Arc::clone(&table));
    Ok(table)
}

/// Shared Bell sequence covering at least `n_max`.
pub fn bell_sequence(n_max: usize) -> Result<Arc<BellSequence>> {
    if n_max > BELL_N_LIMIT {
        return domain(format!(
            "Bell sequence limited to n <= {BELL_N_LIMIT}, requested {n_max}"
        ));
    }
    if let Some(t) = BELL.read().unwrap().as_ref() {
        if t.n_max() >= n_max {
            return Ok(Arc::clone(t));
        }
    }
    let mut guard = BELL.write().unwrap();
    if let Some(t) = guard.as_ref() {
        if t.n_max() >= n_max {
            return Ok(Arc::clone(t));
        }
    }
    let current = guard.as_ref().map_or(0, |t| t.n_max());
    let seq = Arc::new(BellSequence::new(grown_size(n_max, current, BELL_N_LIMIT)));
    *guard = Some(Arc::clone(&seq));
    Ok(seq)
}

/// `S(n, k)`, the number of partitions of `n` elements into `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> Result<LogReal> {
    stirling_table(n)?.get(n, k)
}

/// Exact `S(n, k)` for `n <= EXACT_THRESHOLD`.
pub fn stirling2_exact(n: usize, k: usize) -> Result<BigUint> {
    if n > EXACT_THRESHOLD {
        return domain(format!(
            "exact Stirling numbers limited to n <= {EXACT_THRESHOLD}, got {n}"
        ));
    }
    stirling_table(n)?.exact(n, k).cloned()
}

/// `B_n`, the number of partitions of an `n`-set.
pub fn bell(n: usize) -> Result<LogReal> {
    bell_sequence(n)?.get(n)
}

/// Exact `B_n` for `n <= EXACT_THRESHOLD`.
pub fn bell_exact(n: usize) -> Result<BigUint> {
    if n > EXACT_THRESHOLD {
        return domain(format!("exact Bell numbers limited to n <= {EXACT_THRESHOLD}, got {n}"));
    }
    bell_sequence(n)?.exact(n).cloned()
}

/// `S(n-1, k) / S(n, k)`: the probability that two fixed elements share a
/// block in a uniformly random `k`-block partition of `n` elements.
///
/// `k == n` gives 0 since `S(n-1, n) = 0`.
pub fn stirling_ratio(n: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return domain("stirling_ratio needs k >= 1");
    }
    if n == 0 || k > n {
        return domain(format!("stirling_ratio needs 1 <= k <= n, got n={n}, k={k}"));
    }
    if k == n {
        return Ok(0.0);
    }
    let table = stirling_table(n)?;
    Ok((table.ln(n - 1, k) - table.ln(n, k)).exp())
}

/// Large-`n` form of [`stirling_ratio`], from `S(n, k) ~ k^n / k!`.
pub fn stirling_ratio_approx(k: usize) -> f64 {
    1.0 / k as f64
}

/// `B_{n-1} / B_n`: the probability that two fixed elements share a block in
/// a uniformly random partition of `n` elements.
pub fn bell_ratio(n: usize) -> Result<f64> {
    if n == 0 {
        return domain("bell_ratio needs n >= 1");
    }
    let seq = bell_sequence(n)?;
    Ok((seq.ln(n - 1) - seq.ln(n)).exp())
}

/// Large-`n` form of [`bell_ratio`]: `log(n) / n`.
pub fn bell_ratio_approx(n: usize) -> f64 {
    (n as f64).ln() / n as f64
}
