use super::binomial::ln_binomial_unchecked;
use crate::error::{domain, Result};
use crate::summation::NeumaierSum;

/// `P(n)` for the overlap of an `a`-subset and a `b`-subset of `total` elements:
/// `C(b, n) C(total - b, a - n) / C(total, a)`.
///
/// Values of `n` outside the support return 0 so callers can sum over loose ranges.
pub fn hypergeom_pmf(n: usize, total: usize, a: usize, b: usize) -> Result<f64> {
    if a > total || b > total {
        return domain(format!("hypergeometric margins a={a}, b={b} exceed total {total}"));
    }
    let (lo, hi) = support(total, a, b);
    if n < lo || n > hi {
        return Ok(0.0);
    }
    Ok((ln_binomial_unchecked(b, n) + ln_binomial_unchecked(total - b, a - n) - ln_binomial_unchecked(total, a)).exp())
}

/// Inclusive support `[max(0, a + b - total), min(a, b)]`.
#[inline]
pub fn support(total: usize, a: usize, b: usize) -> (usize, usize) {
    ((a + b).saturating_sub(total), a.min(b))
}

/// Fills `out` with the whole pmf over the support and returns its lower end.
///
/// Starts from the mode (one log-binomial evaluation) and walks outwards with
/// `P(n+1)/P(n) = (a-n)(b-n) / ((n+1)(total-a-b+n+1))`, then renormalizes.
/// Starting at the mode keeps the walk clear of underflow at large `total`.
pub(crate) fn fill_pmf(total: usize, a: usize, b: usize, out: &mut Vec<f64>) -> usize {
    let (lo, hi) = support(total, a, b);
    out.clear();
    out.resize(hi - lo + 1, 0.0);
    let mode = (((a + 1) * (b + 1)) / (total + 2)).clamp(lo, hi);
    let at_mode = (ln_binomial_unchecked(b, mode) + ln_binomial_unchecked(total - b, a - mode)
        - ln_binomial_unchecked(total, a))
    .exp();
    out[mode - lo] = at_mode;

    let ratio =
        |n: usize| -> f64 { ((a - n) as f64 * (b - n) as f64) / ((n + 1) as f64 * (total + n + 1 - a - b) as f64) };
    let mut p = at_mode;
    for n in mode..hi {
        p *= ratio(n);
        out[n + 1 - lo] = p;
    }
    p = at_mode;
    for n in (lo..mode).rev() {
        p /= ratio(n);
        out[n - lo] = p;
    }

    let total_mass: NeumaierSum = out.iter().copied().collect();
    let scale = total_mass.value();
    if scale > 0.0 {
        out.iter_mut().for_each(|v| *v /= scale);
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerated_small_cases() {
        // Placing 2 marked elements among 4 with a 2-subset: 1 of 6 placements overlaps fully.
        assert!((hypergeom_pmf(2, 4, 2, 2).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((hypergeom_pmf(1, 4, 2, 2).unwrap() - 4.0 / 6.0).abs() < 1e-15);
        assert!((hypergeom_pmf(0, 4, 2, 2).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(hypergeom_pmf(3, 10, 3, 10).unwrap(), 1.0);
        assert_eq!(hypergeom_pmf(3, 4, 2, 2).unwrap(), 0.0);
        assert!(hypergeom_pmf(0, 4, 5, 2).is_err());
    }

    #[test]
    fn pmf_sums_to_one_for_all_small_margins() {
        for total in 0..=50 {
            for a in 0..=total {
                for b in 0..=total {
                    let (lo, hi) = support(total, a, b);
                    let s: f64 = (lo..=hi).map(|n| hypergeom_pmf(n, total, a, b).unwrap()).sum();
                    assert!((s - 1.0).abs() <= 1e-12, "N={total} a={a} b={b} sum={s}");
                }
            }
        }
    }

    #[test]
    fn recurrence_fill_matches_direct_terms() {
        let mut buf = Vec::new();
        for &(total, a, b) in &[(20, 7, 11), (50, 25, 25), (300, 150, 149), (64, 64, 3)] {
            let lo = fill_pmf(total, a, b, &mut buf);
            for (i, &p) in buf.iter().enumerate() {
                let direct = hypergeom_pmf(lo + i, total, a, b).unwrap();
                assert!(
                    (p - direct).abs() <= 1e-12 * direct.max(1e-300) + 1e-300,
                    "{total} {a} {b} n={}",
                    lo + i
                );
            }
        }
    }

    #[test]
    fn fill_survives_tail_underflow() {
        let mut buf = Vec::new();
        let lo = fill_pmf(5000, 2500, 2500, &mut buf);
        assert_eq!(lo, 0);
        let s: f64 = buf.iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(buf.iter().all(|p| p.is_finite()));
    }
}
