use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use statrs::function::factorial::ln_factorial;

use super::{LogReal, EXACT_THRESHOLD};
use crate::error::{domain, Result};

fn exact_pascal() -> &'static Vec<Vec<BigUint>> {
    static TABLE: OnceLock<Vec<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(EXACT_THRESHOLD + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=EXACT_THRESHOLD {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        rows
    })
}

fn small_ln_binomials() -> &'static Vec<Vec<f64>> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        exact_pascal()
            .iter()
            .map(|row| row.iter().map(|c| c.to_f64().unwrap().ln()).collect())
            .collect()
    })
}

/// Exact `C(n, k)` by Pascal's rule, for `n <= EXACT_THRESHOLD`.
pub fn binomial_exact(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return domain(format!("binomial C({n}, {k}) needs k <= n"));
    }
    if n > EXACT_THRESHOLD {
        return domain(format!("exact binomial limited to n <= {EXACT_THRESHOLD}, got {n}"));
    }
    Ok(exact_pascal()[n][k].clone())
}

/// Natural log of `C(n, k)`.
///
/// Small `n` read an exact Pascal table; larger `n` use log-gamma.
pub fn log_binomial(n: usize, k: usize) -> Result<LogReal> {
    if k > n {
        return domain(format!("binomial C({n}, {k}) needs k <= n"));
    }
    Ok(LogReal::from_ln(ln_binomial_unchecked(n, k)))
}

#[inline]
pub(crate) fn ln_binomial_unchecked(n: usize, k: usize) -> f64 {
    if n <= EXACT_THRESHOLD {
        small_ln_binomials()[n][k]
    } else if k == 0 || k == n {
        0.0
    } else {
        ln_factorial(n as u64) - ln_factorial(k as u64) - ln_factorial((n - k) as u64)
    }
}
