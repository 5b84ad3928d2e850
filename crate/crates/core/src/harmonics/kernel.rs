use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::atoms::BilinearAtoms;
use super::project::{proj_harmonic_complex, proj_symplectic, SympOrientation};
use super::{kernel_groups, standard_system};
use crate::error::{Error, Result};
use crate::operators::{dot, hermitian, OperatorContext};
use crate::params::KernelParams;
use crate::poly::{Accumulator, SparsePolynomial};
use crate::scalar::{rat_int, ExactScalar};
use crate::specfun::{at_two_s_minus_one, binomial, factorial_q, gegenbauer, jacobi_sum, pochhammer};
use crate::system::VariableSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelKind {
    /// Fischer kernel of all (bi)homogeneous polynomials.
    Z,
    /// Spherical-product kernel of the harmonics.
    K,
    /// Fischer kernel of the symplectic polynomials `ker E†`.
    ZS,
    /// Spherical-product kernel of the symplectic harmonics.
    KS,
}

/// Which linear factor carries the `q − p` excess in the symplectic kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `⟨z̄,u⟩^{q−p}`: bidegree `(p,q)` in `z`.
    ZbarU,
    /// `⟨z,ū⟩^{q−p}`: bidegree `(q,p)` in `z`.
    ZUbar,
}

/// `Σ_i c_i U^i V^{top−i}`.
fn homogenize(sys: &Arc<VariableSystem>, coeffs: &[ExactScalar], u: &SparsePolynomial, v: &SparsePolynomial, top: u32) -> SparsePolynomial {
    let mut acc = Accumulator::new(sys);
    let mut upow = SparsePolynomial::one(sys);
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            upow = &upow * u;
        }
        if c.is_zero() || i as u32 > top {
            continue;
        }
        acc.add_scaled(&(&upow * &v.power(top - i as u32)), c);
    }
    acc.finish()
}

/// Kernel with the default (`ZbarU`) orientation for the symplectic kinds.
pub fn kernel(params: &KernelParams, which: KernelKind) -> Result<SparsePolynomial> {
    kernel_with(params, which, Orientation::ZbarU)
}

pub fn kernel_with(params: &KernelParams, which: KernelKind, orientation: Orientation) -> Result<SparsePolynomial> {
    let sys = standard_system(params)?;
    let (a, b) = kernel_groups(params);
    match (*params, which) {
        (KernelParams::Real { k, .. }, KernelKind::Z) => {
            let xy = dot(&sys, a, b)?;
            Ok(xy.power(k).scale(&ExactScalar::real(factorial_q(k).recip())))
        }
        (KernelParams::Real { m, k }, KernelKind::K) => real_k(&sys, m, k),
        (KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. }, KernelKind::Z) => {
            let big_a = hermitian(&sys, a, b)?;
            let c = (factorial_q(p) * factorial_q(q)).recip();
            Ok((&big_a.power(p) * &big_a.conjugate().power(q)).scale(&ExactScalar::real(c)))
        }
        (KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. }, KernelKind::K) => {
            complex_k(&sys, params.group_len() as u32, p, q)
        }
        (KernelParams::Symplectic { p, q, .. }, KernelKind::ZS) => symplectic_zs(&sys, p, q, orientation),
        (KernelParams::Symplectic { n, p, q }, KernelKind::KS) => symplectic_ks(&sys, n, p, q, orientation),
        (_, kind) => Err(Error::InvalidParams(format!("kernel {kind:?} is not defined for {params}"))),
    }
}

/// `K_k = (k+μ)/μ · ‖x‖^k‖y‖^k C_k^μ(⟨x,y⟩/(‖x‖‖y‖))`, `μ = m/2 − 1`,
/// expanded through the parity of `C_k^μ`.
fn real_k(sys: &Arc<VariableSystem>, m: u32, k: u32) -> Result<SparsePolynomial> {
    let mu = BigRational::new(BigInt::from(m), BigInt::from(2)) - BigRational::one();
    let geg = gegenbauer(k, &mu)?;
    let xy = dot(sys, "x", "y")?;
    let radial = &OperatorContext::new(sys, "x")?.normsq() * &OperatorContext::new(sys, "y")?.normsq();
    let mut acc = Accumulator::new(sys);
    for d in (k % 2..=k).step_by(2) {
        let c = geg.coeff(d as usize);
        if c.is_zero() {
            continue;
        }
        acc.add_scaled(&(&xy.power(d) * &radial.power((k - d) / 2)), &c);
    }
    let pre = (rat_int(k as i64) + &mu) / &mu;
    Ok(acc.finish().scale(&ExactScalar::real(pre)))
}

/// `a_{p,q} = (n−1+k)/(n−1) · C(k−ν+n−2, k−ν)`.
pub(crate) fn koornwinder_constant(n: u32, p: u32, q: u32) -> BigRational {
    let k = p + q;
    let nu = p.min(q);
    rat_int((n - 1 + k) as i64) / rat_int(n as i64 - 1) * BigRational::from_integer(binomial(k - nu + n - 2, k - nu))
}

/// `K_{p,q} = a A^{p−ν} Ā^{q−ν} ‖z‖^{2ν}‖u‖^{2ν} P_ν^{n−2,|p−q|}(2s−1)`,
/// `s = AĀ/(‖z‖²‖u‖²)`.
fn complex_k(sys: &Arc<VariableSystem>, n: u32, p: u32, q: u32) -> Result<SparsePolynomial> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("complex kernel needs n >= 2, got {n}")));
    }
    let nu = p.min(q);
    let big_a = hermitian(sys, "z", "u")?;
    let a_bar = big_a.conjugate();
    let radial = &OperatorContext::new(sys, "z")?.normsq() * &OperatorContext::new(sys, "u")?.normsq();
    let jac = at_two_s_minus_one(&jacobi_sum(nu, &rat_int(n as i64 - 2), &rat_int(p.abs_diff(q) as i64)));
    let inner = homogenize(sys, jac.coeffs(), &(&big_a * &a_bar), &radial, nu);
    let outer = &big_a.power(p - nu) * &a_bar.power(q - nu);
    Ok((&outer * &inner).scale(&ExactScalar::real(koornwinder_constant(n, p, q))))
}

fn excess_factor(atoms: &BilinearAtoms, orientation: Orientation) -> &SparsePolynomial {
    match orientation {
        Orientation::ZbarU => &atoms.a_bar,
        Orientation::ZUbar => &atoms.a,
    }
}

/// `b_{p,q} = (q−p+1)/(p!(q+1)!)`.
pub(crate) fn symplectic_b(p: u32, q: u32) -> BigRational {
    rat_int((q - p + 1) as i64) / (factorial_q(p) * factorial_q(q + 1))
}

/// `d_{p,q} = (q−p+1)(p+q+2n−1)(q+2n−2)! / ((2n−1)!(q+1)!)`.
pub(crate) fn symplectic_d(n: u32, p: u32, q: u32) -> BigRational {
    rat_int((q - p + 1) as i64) * rat_int((p + q + 2 * n - 1) as i64) * factorial_q(q + 2 * n - 2)
        / (factorial_q(2 * n - 1) * factorial_q(q + 1))
}

/// `c_{p,q} = (q−p+1)(q+2n−2)! / ((p+q+2n−2)!(q+1)!)`.
#[cfg(test)]
pub(crate) fn symplectic_c(n: u32, p: u32, q: u32) -> BigRational {
    rat_int((q - p + 1) as i64) * factorial_q(q + 2 * n - 2) / (factorial_q(p + q + 2 * n - 2) * factorial_q(q + 1))
}

/// `Z^S_{p,q} = b X^{q−p} Q^p`, `Q = AĀ + CC̄`.
fn symplectic_zs(sys: &Arc<VariableSystem>, p: u32, q: u32, orientation: Orientation) -> Result<SparsePolynomial> {
    let atoms = BilinearAtoms::new(sys, "z", "u")?;
    let body = &excess_factor(&atoms, orientation).power(q - p) * &atoms.quat_modsq.power(p);
    Ok(body.scale(&ExactScalar::real(symplectic_b(p, q))))
}

/// `K^S_{p,q} = d X^{q−p} ‖z‖^{2p}‖u‖^{2p} P_p^{2n−3,q−p+1}(2t−1)`,
/// `t = Q/(‖z‖²‖u‖²)`. For `n = 1` the Jacobi parameter is `−1` and the
/// binomial-sum form is used.
fn symplectic_ks(sys: &Arc<VariableSystem>, n: u32, p: u32, q: u32, orientation: Orientation) -> Result<SparsePolynomial> {
    let atoms = BilinearAtoms::new(sys, "z", "u")?;
    let radial = &atoms.normsq_z * &atoms.normsq_u;
    let jac = at_two_s_minus_one(&jacobi_sum(p, &rat_int(2 * n as i64 - 3), &rat_int((q - p + 1) as i64)));
    let inner = homogenize(sys, jac.coeffs(), &atoms.quat_modsq, &radial, p);
    let body = &excess_factor(&atoms, orientation).power(q - p) * &inner;
    Ok(body.scale(&ExactScalar::real(symplectic_d(n, p, q))))
}

/// The operator-path construction of a kernel:
/// `Z^S = Proj^{p,q}_{E†}(Z_{p,q})`, `K_{p,q} = (n)_{p+q} Proj^{p,q}_0(Z_{p,q})`,
/// `K^S = (2n)_{p+q} Proj^{p,q}_0(Z^S)`. Real `K_k = 2^k (m/2)_k Proj^k_0(Z_k)`.
pub fn kernel_by_projection(params: &KernelParams, which: KernelKind) -> Result<SparsePolynomial> {
    let sys = standard_system(params)?;
    let (a, _) = kernel_groups(params);
    let ctx = OperatorContext::new(&sys, a)?;
    let deg = params.total_degree();
    let scale_by = |p: SparsePolynomial, r: BigRational| p.scale(&ExactScalar::real(r));
    match (*params, which) {
        (_, KernelKind::Z) => kernel(params, KernelKind::Z),
        (KernelParams::Real { m, k }, KernelKind::K) => {
            let z = kernel(params, KernelKind::Z)?;
            let h = super::project::proj_harmonic_real(&ctx, &z, 0)?;
            let half_m = BigRational::new(BigInt::from(m), BigInt::from(2));
            Ok(scale_by(h, rat_int(2).pow(k as i32) * pochhammer(&half_m, k)))
        }
        (KernelParams::Complex { .. } | KernelParams::Symplectic { .. }, KernelKind::K) => {
            let z = kernel(params, KernelKind::Z)?;
            let h = proj_harmonic_complex(&ctx, &z, 0)?;
            Ok(scale_by(h, pochhammer(&rat_int(params.group_len() as i64), deg)))
        }
        (KernelParams::Symplectic { .. }, KernelKind::ZS) => {
            let z = kernel(params, KernelKind::Z)?;
            proj_symplectic(&ctx, &z, SympOrientation::Edag)
        }
        (KernelParams::Symplectic { .. }, KernelKind::KS) => {
            let zs = kernel_by_projection(params, KernelKind::ZS)?;
            let h = proj_harmonic_complex(&ctx, &zs, 0)?;
            Ok(scale_by(h, pochhammer(&rat_int(params.group_len() as i64), deg)))
        }
        (_, kind) => Err(Error::InvalidParams(format!("kernel {kind:?} is not defined for {params}"))),
    }
}
