//! Closed-form expectations checked against exhaustive enumeration.

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::Clustering;
use crate::combinatorics::bell;
use crate::error::{Error, Result};
use crate::model::Evaluation;
use crate::mutual_info::{
    expected_entropy_all, expected_entropy_num, expected_joint_entropy_all, expected_joint_entropy_num,
    expected_mi_all, expected_mi_all_onesided_sizes, expected_mi_num, expected_mi_num_onesided_sizes, expected_mi_perm,
};
use crate::oracle::{exact_expectation, exact_rand_factorized, OracleMeasure, ENUMERATION_CEILING};
use crate::rand_index::{self, exact};
use crate::random_models::Ensemble;

/// Relative tolerance for Rand index expectations.
pub const RAND_TOLERANCE: f64 = 1e-12;
/// Relative tolerance for information-theoretic expectations.
pub const MI_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    RandPerm,
    RandPermOneSided,
    RandNum,
    RandAll,
    RandNumOneSided,
    RandAllOneSided,
    EntropyNum,
    EntropyAll,
    JointEntropyNum,
    JointEntropyAll,
    MiPerm,
    MiNum,
    MiAll,
    MiNumOneSided,
    MiAllOneSided,
}

impl Formula {
    pub const ALL: [Formula; 15] = [
        Formula::RandPerm,
        Formula::RandPermOneSided,
        Formula::RandNum,
        Formula::RandAll,
        Formula::RandNumOneSided,
        Formula::RandAllOneSided,
        Formula::EntropyNum,
        Formula::EntropyAll,
        Formula::JointEntropyNum,
        Formula::JointEntropyAll,
        Formula::MiPerm,
        Formula::MiNum,
        Formula::MiAll,
        Formula::MiNumOneSided,
        Formula::MiAllOneSided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::RandPerm => "rand/perm",
            Formula::RandPermOneSided => "rand/perm/one-sided",
            Formula::RandNum => "rand/num",
            Formula::RandAll => "rand/all",
            Formula::RandNumOneSided => "rand/num/one-sided",
            Formula::RandAllOneSided => "rand/all/one-sided",
            Formula::EntropyNum => "entropy/num",
            Formula::EntropyAll => "entropy/all",
            Formula::JointEntropyNum => "joint-entropy/num",
            Formula::JointEntropyAll => "joint-entropy/all",
            Formula::MiPerm => "mi/perm",
            Formula::MiNum => "mi/num",
            Formula::MiAll => "mi/all",
            Formula::MiNumOneSided => "mi/num/one-sided",
            Formula::MiAllOneSided => "mi/all/one-sided",
        }
    }

    /// Largest `N` checked for this formula.
    pub fn cap(self) -> usize {
        match self {
            Formula::RandNum | Formula::RandNumOneSided | Formula::RandAllOneSided => 8,
            Formula::RandPerm | Formula::RandPermOneSided | Formula::RandAll => 7,
            Formula::MiPerm | Formula::MiAll | Formula::EntropyAll | Formula::JointEntropyAll => 6,
            Formula::MiNum
            | Formula::MiNumOneSided
            | Formula::MiAllOneSided
            | Formula::EntropyNum
            | Formula::JointEntropyNum => 7,
        }
    }

    fn is_rand(self) -> bool {
        matches!(
            self,
            Formula::RandPerm
                | Formula::RandPermOneSided
                | Formula::RandNum
                | Formula::RandAll
                | Formula::RandNumOneSided
                | Formula::RandAllOneSided
        )
    }

    pub fn tolerance(self) -> f64 {
        if self.is_rand() {
            RAND_TOLERANCE
        } else {
            MI_TOLERANCE
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Upper limit on `N`; each formula also stops at its own cap.
    pub max_n: usize,
    /// Perturbs one closed form by a relative `1e-6`, for testing the checker.
    pub corrupt: Option<Formula>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormulaCheck {
    pub formula: Formula,
    pub max_n: usize,
    pub cases: usize,
    pub max_relative_error: f64,
    pub tolerance: f64,
    /// Rand index only: rational closed form equals the enumeration exactly,
    /// both by cross product and by per-pair probabilities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_match: Option<bool>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<FormulaCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, formula: Formula) -> Option<&FormulaCheck> {
        self.checks.iter().find(|c| c.formula == formula)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}\t{:<22}\tN<={}\tcases={}\tmax_rel_err={:.3e}\ttol={:.0e}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.formula.name(),
                c.max_n,
                c.cases,
                c.max_relative_error,
                c.tolerance,
                match c.exact_match {
                    Some(true) => "\texact=yes",
                    Some(false) => "\texact=NO",
                    None => "",
                }
            )?;
        }
        Ok(())
    }
}

/// Integer partitions of `n` in decreasing-part form, largest parts first.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn relative_error(closed: f64, truth: f64) -> f64 {
    if truth == 0.0 {
        closed.abs()
    } else {
        ((closed - truth) / truth).abs()
    }
}

/// One comparison: closed form, enumerated truth, and for the Rand index
/// whether the rational paths agree exactly.
struct Case {
    closed: f64,
    truth: f64,
    exact: Option<bool>,
}

fn rand_case(closed: f64, closed_exact: num_rational::BigRational, ensemble: &Ensemble) -> Result<Case> {
    let full = exact_expectation(OracleMeasure::Rand, ensemble)?;
    let full = full.as_rational().expect("rational").clone();
    let factorized = exact_rand_factorized(ensemble)?;
    Ok(Case {
        closed,
        truth: full.to_f64().unwrap_or(f64::NAN),
        exact: Some(full == closed_exact && factorized == closed_exact),
    })
}

fn log_case(closed: f64, measure: OracleMeasure, ensemble: &Ensemble) -> Result<Case> {
    Ok(Case {
        closed,
        truth: exact_expectation(measure, ensemble)?.to_f64(),
        exact: None,
    })
}

fn cases_for(formula: Formula, n: usize) -> Result<Vec<Case>> {
    let ks = 1..=n;
    let pairs_k: Vec<(usize, usize)> = ks.clone().flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    let partitions = integer_partitions(n);
    let size_pairs: Vec<(&Vec<usize>, &Vec<usize>)> = partitions
        .iter()
        .flat_map(|a| partitions.iter().map(move |b| (a, b)))
        .collect();
    let from_sizes = |s: &[usize]| Clustering::from_sizes(s);
    let k_and_ref: Vec<(usize, &Vec<usize>)> = ks
        .clone()
        .flat_map(|k| partitions.iter().map(move |g| (k, g)))
        .collect();

    match formula {
        Formula::RandPerm | Formula::RandPermOneSided => size_pairs
            .par_iter()
            .map(|(sa, sb)| {
                let (a, b) = (from_sizes(sa)?, from_sizes(sb)?);
                let ensemble = if formula == Formula::RandPerm {
                    Ensemble::Perm { a, b }
                } else {
                    Ensemble::PermOneSided {
                        template: a,
                        reference: b,
                    }
                };
                rand_case(
                    rand_index::expected_rand_perm(sa, sb, n)?,
                    exact::expected_rand_perm(sa, sb, n)?,
                    &ensemble,
                )
            })
            .collect(),
        Formula::RandNum => pairs_k
            .par_iter()
            .map(|&(k_a, k_b)| {
                rand_case(
                    rand_index::expected_rand_num(k_a, k_b, n, Evaluation::Exact)?,
                    exact::expected_rand_num(k_a, k_b, n)?,
                    &Ensemble::Num { n, k_a, k_b },
                )
            })
            .collect(),
        Formula::RandAll => Ok(vec![rand_case(
            rand_index::expected_rand_all(n, Evaluation::Exact)?,
            exact::expected_rand_all(n)?,
            &Ensemble::All { n },
        )?]),
        Formula::RandNumOneSided => k_and_ref
            .par_iter()
            .map(|&(k_a, g)| {
                rand_case(
                    rand_index::expected_rand_num_onesided_sizes(k_a, n, g)?,
                    exact::expected_rand_num_onesided(k_a, n, g)?,
                    &Ensemble::NumOneSided {
                        k_a,
                        reference: from_sizes(g)?,
                    },
                )
            })
            .collect(),
        Formula::RandAllOneSided => partitions
            .par_iter()
            .map(|g| {
                rand_case(
                    rand_index::expected_rand_all_onesided_sizes(n, g)?,
                    exact::expected_rand_all_onesided(n, g)?,
                    &Ensemble::AllOneSided {
                        reference: from_sizes(g)?,
                    },
                )
            })
            .collect(),
        Formula::EntropyNum => ks
            .into_par_iter()
            .map(|k| {
                log_case(
                    expected_entropy_num(k, n)?,
                    OracleMeasure::Entropy,
                    &Ensemble::Num { n, k_a: k, k_b: 1 },
                )
            })
            .collect(),
        Formula::EntropyAll => Ok(vec![log_case(
            expected_entropy_all(n)?,
            OracleMeasure::Entropy,
            &Ensemble::All { n },
        )?]),
        Formula::JointEntropyNum => pairs_k
            .par_iter()
            .map(|&(k_a, k_b)| {
                log_case(
                    expected_joint_entropy_num(k_a, k_b, n)?,
                    OracleMeasure::JointEntropy,
                    &Ensemble::Num { n, k_a, k_b },
                )
            })
            .collect(),
        Formula::JointEntropyAll => Ok(vec![log_case(
            expected_joint_entropy_all(n)?,
            OracleMeasure::JointEntropy,
            &Ensemble::All { n },
        )?]),
        Formula::MiPerm => size_pairs
            .par_iter()
            .map(|(sa, sb)| {
                log_case(
                    expected_mi_perm(sa, sb, n)?,
                    OracleMeasure::Mi,
                    &Ensemble::Perm {
                        a: from_sizes(sa)?,
                        b: from_sizes(sb)?,
                    },
                )
            })
            .collect(),
        Formula::MiNum => pairs_k
            .par_iter()
            .map(|&(k_a, k_b)| {
                log_case(
                    expected_mi_num(k_a, k_b, n)?,
                    OracleMeasure::Mi,
                    &Ensemble::Num { n, k_a, k_b },
                )
            })
            .collect(),
        Formula::MiAll => {
            if n < 2 {
                return Ok(Vec::new());
            }
            Ok(vec![log_case(
                expected_mi_all(n)?,
                OracleMeasure::Mi,
                &Ensemble::All { n },
            )?])
        }
        Formula::MiNumOneSided => k_and_ref
            .par_iter()
            .map(|&(k_a, g)| {
                log_case(
                    expected_mi_num_onesided_sizes(k_a, n, g)?,
                    OracleMeasure::Mi,
                    &Ensemble::NumOneSided {
                        k_a,
                        reference: from_sizes(g)?,
                    },
                )
            })
            .collect(),
        Formula::MiAllOneSided => partitions
            .par_iter()
            .map(|g| {
                log_case(
                    expected_mi_all_onesided_sizes(n, g)?,
                    OracleMeasure::Mi,
                    &Ensemble::AllOneSided {
                        reference: from_sizes(g)?,
                    },
                )
            })
            .collect(),
    }
}

/// Checks one formula for every `N` from its smallest valid value up to
/// `min(max_n, cap)`.
pub fn verify_formula(formula: Formula, options: &VerifyOptions) -> Result<FormulaCheck> {
    let max_n = options.max_n.min(formula.cap());
    let start = if formula.is_rand() { 2 } else { 1 };
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    let mut exact = formula.is_rand().then_some(true);
    for n in start..=max_n {
        for case in cases_for(formula, n)? {
            let closed = if options.corrupt == Some(formula) {
                case.closed * (1.0 + 1e-6)
            } else {
                case.closed
            };
            worst = worst.max(relative_error(closed, case.truth));
            if let (Some(all), Some(this)) = (exact.as_mut(), case.exact) {
                *all &= this;
            }
            cases += 1;
        }
    }
    if options.corrupt == Some(formula) {
        exact = exact.map(|_| false);
    }
    let tolerance = formula.tolerance();
    Ok(FormulaCheck {
        formula,
        max_n,
        cases,
        max_relative_error: worst,
        tolerance,
        exact_match: exact,
        passed: cases > 0 && worst <= tolerance && exact != Some(false),
    })
}

/// Runs every formula check. `max_n` beyond the enumeration ceiling is refused.
pub fn verify_all(options: &VerifyOptions) -> Result<VerifyReport> {
    if options.max_n > ENUMERATION_CEILING {
        let count = bell(options.max_n)
            .map(|b| format!("{:.6e}", b.value()))
            .unwrap_or_else(|_| "too many".into());
        return Err(Error::Ceiling(format!(
            "max-n {} would enumerate B_{} = {count} partitions; the ceiling is N <= {ENUMERATION_CEILING}",
            options.max_n, options.max_n
        )));
    }
    if options.max_n < 2 {
        return Err(Error::Domain("max-n must be at least 2".into()));
    }
    let checks = Formula::ALL
        .iter()
        .map(|&f| verify_formula(f, options))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { checks })
}
