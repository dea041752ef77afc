//! Random clustering models and the shared chance correction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The random ensemble a similarity score is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// No correction.
    None,
    /// Elements shuffled between clusters of fixed sizes.
    Perm,
    /// Uniform over clusterings with a fixed number of clusters.
    Num,
    /// Uniform over all clusterings of the elements.
    All,
}

/// Whether both clusterings are random, or one is a fixed reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    #[default]
    TwoSided,
    OneSided,
}

/// Which of the two compared clusterings is held fixed in a one-sided comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceSide {
    A,
    B,
}

/// Closed-form expectation or its large-`N` approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evaluation {
    #[default]
    Exact,
    Approx,
}

/// Chance correction `(raw - expectation) / (max_bound - expectation)`.
pub fn adjust(raw: f64, expectation: f64, max_bound: f64) -> Result<f64> {
    let denom = max_bound - expectation;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::UndefinedAdjustment {
            expectation,
            reason: format!("maximum bound {max_bound} leaves no room above the expectation"),
        });
    }
    Ok((raw - expectation) / denom)
}

macro_rules! text_enum {
    ($ty:ty { $($variant:path => $text:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = match self { $($variant => $text),+ };
                f.write_str(s)
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($variant),)+
                    other => Err(Error::InvalidSpec(format!(
                        "unknown {} {other:?}", stringify!($ty)
                    ))),
                }
            }
        }
    };
}

text_enum!(Model {
    Model::None => "none",
    Model::Perm => "perm",
    Model::Num => "num",
    Model::All => "all",
});

text_enum!(Sidedness {
    Sidedness::TwoSided => "two_sided",
    Sidedness::OneSided => "one_sided",
});
