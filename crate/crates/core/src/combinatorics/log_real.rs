use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

/// A non-negative magnitude held as its natural logarithm.
///
/// `-inf` encodes zero. Products and quotients are exact sums and
/// differences of the stored logarithms; sums go through `log-add-exp`.
#[derive(Clone, Copy, PartialEq)]
pub struct LogReal(f64);

impl LogReal {
    pub const ZERO: LogReal = LogReal(f64::NEG_INFINITY);
    pub const ONE: LogReal = LogReal(0.0);

    /// Wraps a logarithm. NaN and `+inf` are rejected.
    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan() && ln != f64::INFINITY, "LogReal::from_ln given {ln}");
        LogReal(ln)
    }

    /// Takes the logarithm of a non-negative value.
    pub fn from_value(value: f64) -> Self {
        assert!(value >= 0.0, "LogReal::from_value given negative {value}");
        LogReal(value.ln())
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    /// `exp(ln)`; overflows to `inf` outside machine range.
    #[inline]
    pub fn value(self) -> f64 {
        self.0.exp()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `self / other` as a plain real, the one exponentiation of a small difference.
    pub fn ratio(self, other: LogReal) -> f64 {
        (self / other).value()
    }

    pub fn powi(self, exponent: i32) -> LogReal {
        if self.is_zero() {
            return if exponent == 0 { LogReal::ONE } else { LogReal::ZERO };
        }
        LogReal(self.0 * f64::from(exponent))
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        if self.is_zero() || rhs.is_zero() {
            LogReal::ZERO
        } else {
            LogReal(self.0 + rhs.0)
        }
    }
}

impl Div for LogReal {
    type Output = LogReal;
    fn div(self, rhs: LogReal) -> LogReal {
        assert!(!rhs.is_zero(), "LogReal division by zero");
        if self.is_zero() {
            LogReal::ZERO
        } else {
            LogReal(self.0 - rhs.0)
        }
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        LogReal(log_add_exp(self.0, rhs.0))
    }
}

impl Eq for LogReal {}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogReal(exp({}))", self.0)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let decimal_exp = self.0 / std::f64::consts::LN_10;
        if decimal_exp.abs() < 15.0 {
            write!(f, "{}", self.value())
        } else {
            let e = decimal_exp.floor();
            write!(f, "{:.12}e{}", 10f64.powf(decimal_exp - e), e as i64)
        }
    }
}

/// `ln(exp(x) + exp(y))` without overflow.
#[inline]
pub fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(sum exp(x_i))`, shifting by the maximum and summing with compensation.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let acc = crate::summation::compensated_sum(values.iter().map(|v| (v - max).exp()));
    max + acc.ln()
}
