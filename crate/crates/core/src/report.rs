//! Verification reports: one record per checked identity and parameter set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::KernelParams;
use crate::poly::SparsePolynomial;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// First monomial at which the two sides of a failed identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: KernelParams,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<String>,
    pub resolution_notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity_id: impl Into<String>, params: KernelParams) -> Self {
        VerificationReport {
            identity_id: identity_id.into(),
            params,
            status: Status::Pass,
            witness: None,
            elapsed_ms: 0,
            seed: None,
            cap: None,
            resolution_notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.resolution_notes.push(text.into());
    }

    /// Record an exact comparison; the first failure wins and keeps its witness.
    pub fn check_eq(&mut self, lhs: &SparsePolynomial, rhs: &SparsePolynomial) -> bool {
        match lhs.first_difference(rhs) {
            None => true,
            Some((m, a, b)) => {
                self.fail_with(Witness {
                    monomial: lhs.monomial_name(&m),
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                });
                false
            }
        }
    }

    pub fn check_scalar(&mut self, what: &str, lhs: &ExactScalar, rhs: &ExactScalar) -> bool {
        if lhs == rhs {
            return true;
        }
        self.fail_with(Witness {
            monomial: what.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        false
    }

    pub fn check(&mut self, what: &str, ok: bool) -> bool {
        if !ok {
            self.fail_with(Witness {
                monomial: what.to_string(),
                lhs: "false".into(),
                rhs: "true".into(),
            });
        }
        ok
    }

    fn fail_with(&mut self, w: Witness) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(w);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Fold the outcome of a computation into the report: cap errors become
    /// `skipped`, other errors become failures.
    pub fn absorb(&mut self, outcome: Result<()>) {
        match outcome {
            Ok(()) => {}
            Err(Error::CapExceeded { cap, value, limit }) => {
                if self.status == Status::Pass {
                    self.status = Status::Skipped;
                }
                self.cap = Some(cap.to_string());
                self.note(format!("cap `{cap}` exceeded: {value} > {limit}"));
            }
            Err(e) => self.fail_with(Witness {
                monomial: "error".into(),
                lhs: e.to_string(),
                rhs: String::new(),
            }),
        }
    }
}

/// Resource limits for one verification task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on the term count of any polynomial a task builds, and on
    /// the number of monomial pairs a Stiefel contraction visits.
    pub max_terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_terms: 4_000_000 }
    }
}

impl Caps {
    pub fn guard(&self, value: usize) -> Result<()> {
        if value > self.max_terms {
            Err(Error::CapExceeded {
                cap: "max_terms",
                value,
                limit: self.max_terms,
            })
        } else {
            Ok(())
        }
    }

    pub fn guard_poly(&self, p: &SparsePolynomial) -> Result<()> {
        self.guard(p.len())
    }
}
