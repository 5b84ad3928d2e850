//! Exact computer algebra for harmonic analysis on spheres.
//!
//! Polynomials live in a [`VariableSystem`] of named real or complex vector
//! groups and carry Gaussian-rational coefficients, so every identity can be
//! checked by exact equality.

pub mod error;
pub mod harmonics;
pub mod linalg;
pub mod monomial;
pub mod operators;
pub mod params;
pub mod pizzetti;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod specfun;
pub mod system;
pub mod verify;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use operators::OperatorContext;
pub use params::KernelParams;
pub use parse::{format_poly, parse_poly};
pub use poly::{DegreeProfile, RingOp, SparsePolynomial};
pub use scalar::ExactScalar;
pub use system::{Kind, Sym, VariableSystem};
