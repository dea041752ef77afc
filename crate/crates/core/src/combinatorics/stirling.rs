use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::log_real::log_add_exp;
use super::{LogReal, EXACT_THRESHOLD};
use crate::error::{domain, Result};

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n <= n_max`.
///
/// The log table is filled by `S(n+1, k) = k S(n, k) + S(n, k-1)` in log
/// space. Rows up to [`EXACT_THRESHOLD`] are also kept as exact integers,
/// built by the same recurrence independently of the log table.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    n_max: usize,
    ln_entries: Vec<f64>,
    exact_entries: Vec<BigUint>,
}

#[inline]
fn tri(n: usize, k: usize) -> usize {
    n * (n + 1) / 2 + k
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut ln_entries = vec![f64::NEG_INFINITY; tri(n_max, n_max) + 1];
        ln_entries[0] = 0.0;
        for n in 0..n_max {
            for k in 1..=n + 1 {
                let stay = if k <= n {
                    (k as f64).ln() + ln_entries[tri(n, k)]
                } else {
                    f64::NEG_INFINITY
                };
                let open = ln_entries[tri(n, k - 1)];
                ln_entries[tri(n + 1, k)] = log_add_exp(stay, open);
            }
        }

        let exact_max = n_max.min(EXACT_THRESHOLD);
        let mut exact_entries = vec![BigUint::zero(); tri(exact_max, exact_max) + 1];
        exact_entries[0] = BigUint::one();
        for n in 0..exact_max {
            for k in 1..=n + 1 {
                let stay = if k <= n {
                    &exact_entries[tri(n, k)] * BigUint::from(k)
                } else {
                    BigUint::zero()
                };
                exact_entries[tri(n + 1, k)] = stay + &exact_entries[tri(n, k - 1)];
            }
        }

        Self {
            n_max,
            ln_entries,
            exact_entries,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn exact_max(&self) -> usize {
        self.n_max.min(EXACT_THRESHOLD)
    }

    pub fn get(&self, n: usize, k: usize) -> Result<LogReal> {
        self.check(n, k)?;
        Ok(LogReal::from_ln(self.ln_entries[tri(n, k)]))
    }

    pub fn exact(&self, n: usize, k: usize) -> Result<&BigUint> {
        self.check(n, k)?;
        if n > self.exact_max() {
            return domain(format!(
                "exact Stirling numbers limited to n <= {}, got {n}",
                self.exact_max()
            ));
        }
        Ok(&self.exact_entries[tri(n, k)])
    }

    /// `ln S(n, k)`, with `-inf` for `k > n`. Panics past `n_max`.
    #[inline]
    pub(crate) fn ln(&self, n: usize, k: usize) -> f64 {
        if k > n {
            f64::NEG_INFINITY
        } else {
            self.ln_entries[tri(n, k)]
        }
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if k > n {
            return domain(format!("S({n}, {k}) needs k <= n"));
        }
        if n > self.n_max {
            return domain(format!("S({n}, {k}) beyond table size {}", self.n_max));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn boundary_conditions() {
        let t = StirlingTable::new(10);
        assert_eq!(t.exact(0, 0).unwrap(), &BigUint::one());
        for n in 1..=10 {
            assert!(t.exact(n, 0).unwrap().is_zero());
            assert!(t.get(n, 0).unwrap().is_zero());
            assert_eq!(t.exact(n, 1).unwrap(), &BigUint::one());
            assert_eq!(t.exact(n, n).unwrap(), &BigUint::one());
        }
        assert!(t.get(3, 4).is_err());
        assert!(t.get(11, 1).is_err());
    }

    #[test]
    fn exact_recurrence_holds_on_every_entry() {
        let t = StirlingTable::new(EXACT_THRESHOLD);
        for n in 0..EXACT_THRESHOLD {
            for k in 1..=n {
                let lhs = t.exact(n + 1, k).unwrap();
                let rhs = t.exact(n, k).unwrap() * BigUint::from(k) + t.exact(n, k - 1).unwrap();
                assert_eq!(lhs, &rhs);
            }
        }
    }

    #[test]
    fn log_and_exact_agree() {
        let t = StirlingTable::new(EXACT_THRESHOLD);
        let mut worst: f64 = 0.0;
        for n in 0..=EXACT_THRESHOLD {
            for k in 1..=n {
                let exact = t.exact(n, k).unwrap().to_f64().unwrap();
                let approx = t.get(n, k).unwrap().value();
                worst = worst.max(((approx - exact) / exact).abs());
            }
        }
        assert!(worst <= 1e-12, "worst relative error {worst}");
    }
}
