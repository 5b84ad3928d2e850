use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of one harmonic family.
///
/// `Complex { n, .. }` is the complex dimension. `Symplectic { n, .. }` is the
/// quaternionic dimension: the variables live in ℂ^{2n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum KernelParams {
    Real { m: u32, k: u32 },
    Complex { n: u32, p: u32, q: u32 },
    Symplectic { n: u32, p: u32, q: u32 },
}

impl KernelParams {
    /// Check the bounds every constructor relies on.
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelParams::Real { m, .. } if m < 3 => Err(Error::InvalidParams(format!(
                "real case needs m >= 3 (got m = {m})"
            ))),
            KernelParams::Complex { n, .. } if n < 2 => Err(Error::InvalidParams(format!(
                "complex case needs n >= 2 (got n = {n})"
            ))),
            KernelParams::Symplectic { n, .. } if n < 1 => {
                Err(Error::InvalidParams("symplectic case needs n >= 1".into()))
            }
            KernelParams::Symplectic { p, q, .. } if p > q => Err(Error::InvalidParams(format!(
                "symplectic parameters are normalized to p <= q (got p = {p}, q = {q})"
            ))),
            _ => Ok(()),
        }
    }

    /// Length of the complex (or real) variable group.
    pub fn group_len(&self) -> usize {
        match *self {
            KernelParams::Real { m, .. } => m as usize,
            KernelParams::Complex { n, .. } => n as usize,
            KernelParams::Symplectic { n, .. } => 2 * n as usize,
        }
    }

    pub fn total_degree(&self) -> u32 {
        match *self {
            KernelParams::Real { k, .. } => k,
            KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. } => p + q,
        }
    }
}

impl fmt::Display for KernelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KernelParams::Real { m, k } => write!(f, "real(m={m},k={k})"),
            KernelParams::Complex { n, p, q } => write!(f, "complex(n={n},p={p},q={q})"),
            KernelParams::Symplectic { n, p, q } => write!(f, "symplectic(n={n},p={p},q={q})"),
        }
    }
}
