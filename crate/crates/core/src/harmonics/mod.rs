//! Projection operators, Fischer decompositions, reproducing kernels and
//! seeded random test polynomials for the real, complex and symplectic
//! harmonic families.

mod atoms;
mod kernel;
mod project;
mod random;

use std::sync::Arc;

pub use atoms::BilinearAtoms;
pub use kernel::{kernel, kernel_by_projection, kernel_with, KernelKind, Orientation};
pub(crate) use kernel::symplectic_b;
pub use project::{
    decompose, kappa, proj_harmonic_complex, proj_harmonic_real, proj_symplectic, Component, Flavor,
    SympOrientation,
};
pub use random::{monomial_basis, random_poly, RandomFlavor};

use crate::error::Result;
use crate::params::KernelParams;
use crate::system::VariableSystem;

/// The variable system shared by all constructions for one parameter set:
/// the harmonic variable, the kernel's second argument and the two Stiefel
/// integration vectors.
///
/// Real: `x, y, s, t` in ℝ^m. Complex: `z, u, s, t` in ℂ^n.
/// Symplectic: `z, u, s, t` in ℂ^{2n}.
pub fn standard_system(params: &KernelParams) -> Result<Arc<VariableSystem>> {
    params.validate()?;
    let len = params.group_len();
    match params {
        KernelParams::Real { .. } => VariableSystem::builder()
            .real("x", len)
            .real("y", len)
            .real("s", len)
            .real("t", len)
            .build(),
        KernelParams::Complex { .. } | KernelParams::Symplectic { .. } => VariableSystem::builder()
            .complex("z", len)
            .complex("u", len)
            .complex("s", len)
            .complex("t", len)
            .build(),
    }
}

/// Names of the harmonic variable and the kernel's second argument.
pub fn kernel_groups(params: &KernelParams) -> (&'static str, &'static str) {
    match params {
        KernelParams::Real { .. } => ("x", "y"),
        _ => ("z", "u"),
    }
}
