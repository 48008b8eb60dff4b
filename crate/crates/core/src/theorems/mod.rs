//! Constructions of homotopy certificates between functors of hammock
//! stages, and the decision procedures built on top of them.
//!
//! Every construction returns explicit data (functors, natural
//! transformations given componentwise) that the caller re-checks with
//! [`crate::homcert::Certificate::verify`]; nothing here is trusted.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hammock::{MapError, ZigZagError};
use crate::relcat::HomotopyError;

pub mod family;
pub mod hoalg;
pub mod lemma53;
pub mod pi0map;
pub mod prop52;
pub mod rmk33;
pub mod thm31;
pub mod thm32;

pub use family::{
    CompatCheck, FamilyReport, StageCheck, StageWitness, StageWitnessFamily, WireFamily,
};
pub use pi0map::{pi0_precompose, Pi0Map, Pi0Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    /// Conjunction: any failure fails, otherwise any unknown is unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    ZigZag(#[from] ZigZagError),
}

/// Odd stages `1, 3, …, n_max`.
pub fn odd_stages(n_max: usize) -> Result<Vec<usize>, TheoremError> {
    if n_max % 2 == 0 {
        return Err(TheoremError::Input(format!(
            "stage bound must be odd, got {n_max}"
        )));
    }
    Ok((1..=n_max).step_by(2).collect())
}
