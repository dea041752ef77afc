use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::binomial::{binomial_exact, ln_binomial_unchecked};
use super::log_real::log_sum_exp;
use super::{LogReal, EXACT_THRESHOLD};
use crate::error::{domain, Result};

/// Bell numbers `B_0 ..= B_{n_max}` from `B_{n+1} = sum_k C(n, k) B_k`.
#[derive(Debug, Clone)]
pub struct BellSequence {
    n_max: usize,
    ln_values: Vec<f64>,
    exact_values: Vec<BigUint>,
}

impl BellSequence {
    pub fn new(n_max: usize) -> Self {
        let mut ln_values = Vec::with_capacity(n_max + 1);
        ln_values.push(0.0);
        let mut terms = Vec::with_capacity(n_max + 1);
        for n in 0..n_max {
            terms.clear();
            terms.extend((0..=n).map(|k| ln_binomial_unchecked(n, k) + ln_values[k]));
            ln_values.push(log_sum_exp(&terms));
        }

        let exact_max = n_max.min(EXACT_THRESHOLD);
        let mut exact_values = Vec::with_capacity(exact_max + 1);
        exact_values.push(BigUint::one());
        for n in 0..exact_max {
            let next = (0..=n).fold(BigUint::zero(), |acc, k| {
                acc + binomial_exact(n, k).expect("n within exact range") * &exact_values[k]
            });
            exact_values.push(next);
        }

        Self {
            n_max,
            ln_values,
            exact_values,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize) -> Result<LogReal> {
        if n > self.n_max {
            return domain(format!("B_{n} beyond table size {}", self.n_max));
        }
        Ok(LogReal::from_ln(self.ln_values[n]))
    }

    pub fn exact(&self, n: usize) -> Result<&BigUint> {
        if n >= self.exact_values.len() {
            return domain(format!(
                "exact Bell numbers limited to n <= {}, got {n}",
                self.exact_values.len() - 1
            ));
        }
        Ok(&self.exact_values[n])
    }

    #[inline]
    pub(crate) fn ln(&self, n: usize) -> f64 {
        self.ln_values[n]
    }
}
