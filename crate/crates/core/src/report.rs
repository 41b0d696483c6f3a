//! Verification reports shared by every checking routine.

use serde::Serialize;

use crate::linalg::Matrix;
use crate::ring::Ring;

/// A violating matrix entry: `lhs[(row, col)] != rhs[(row, col)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Serializes as `{claim, degree, pass, witness}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: String,
    pub degree: Option<i64>,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Report {
    pub fn pass(claim: impl Into<String>, degree: Option<i64>) -> Self {
        Report {
            claim: claim.into(),
            degree,
            pass: true,
            witness: None,
        }
    }

    pub fn fail(claim: impl Into<String>, degree: Option<i64>, witness: Option<Witness>) -> Self {
        Report {
            claim: claim.into(),
            degree,
            pass: false,
            witness,
        }
    }

    pub fn check(claim: impl Into<String>, degree: Option<i64>, ok: bool) -> Self {
        if ok {
            Self::pass(claim, degree)
        } else {
            Self::fail(claim, degree, None)
        }
    }

    /// Entrywise comparison; a shape mismatch is reported at `(0, 0)` with the shapes.
    pub fn compare<R: Ring>(claim: impl Into<String>, degree: Option<i64>, lhs: &Matrix<R>, rhs: &Matrix<R>) -> Self {
        if lhs.shape() != rhs.shape() {
            let witness = Witness {
                row: 0,
                col: 0,
                lhs: format!("shape {:?}", lhs.shape()),
                rhs: format!("shape {:?}", rhs.shape()),
            };
            return Self::fail(claim, degree, Some(witness));
        }
        match lhs.first_difference(rhs) {
            None => Self::pass(claim, degree),
            Some((row, col)) => Self::fail(
                claim,
                degree,
                Some(Witness {
                    row,
                    col,
                    lhs: lhs[(row, col)].to_string(),
                    rhs: rhs[(row, col)].to_string(),
                }),
            ),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.pass)
}
