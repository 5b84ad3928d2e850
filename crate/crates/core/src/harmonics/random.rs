use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::project::{proj_harmonic_complex, proj_harmonic_real, proj_symplectic, SympOrientation};
use super::{kernel_groups, standard_system};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::operators::OperatorContext;
use crate::params::KernelParams;
use crate::poly::{DegreeProfile, SparsePolynomial};
use crate::scalar::ExactScalar;
use crate::specfun::{dim_complex, dim_homogeneous, dim_bihomogeneous, dim_spherical, dim_symplectic_hs, dim_symplectic_r};
use crate::system::{Kind, Sym, VariableSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomFlavor {
    Homogeneous,
    Harmonic,
    Symplectic,
    SymplecticHarmonic,
}

/// All exponent vectors of length `len` with entries summing to `degree`,
/// in lexicographically decreasing order.
fn compositions(len: usize, degree: u32) -> Vec<Vec<u16>> {
    fn rec(len: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() + 1 == len {
            cur.push(left as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(len, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(len, degree, &mut Vec::with_capacity(len), &mut out);
    out
}

fn from_exponents(syms: impl Iterator<Item = Sym>, exps: &[u16]) -> Monomial {
    Monomial::from_pairs(syms.zip(exps.iter().copied()).filter(|(_, e)| *e > 0))
}

/// Monomial basis of the homogeneous polynomials of the given degree
/// (real group) or bidegree (complex group) in one group.
pub fn monomial_basis(system: &Arc<VariableSystem>, group: &str, profile: DegreeProfile) -> Result<Vec<Monomial>> {
    let g = system.group(group)?;
    match (g.kind, profile) {
        (_, DegreeProfile::Zero) => Ok(Vec::new()),
        (Kind::Real, DegreeProfile::Degree(k)) => Ok(compositions(g.len, k)
            .iter()
            .map(|e| from_exponents((0..g.len).map(|j| g.sym(j)), e))
            .collect()),
        (Kind::Complex, DegreeProfile::Bidegree(p, q)) => {
            let holo = compositions(g.len, p);
            let anti = compositions(g.len, q);
            let mut out = Vec::with_capacity(holo.len() * anti.len());
            for a in &holo {
                let ma = from_exponents((0..g.len).map(|j| g.sym(j)), a);
                for b in &anti {
                    out.push(ma.mul(&from_exponents((0..g.len).map(|j| g.bar(j)), b)));
                }
            }
            Ok(out)
        }
        (Kind::Complex, DegreeProfile::Degree(k)) => {
            let mut out = Vec::new();
            for p in (0..=k).rev() {
                out.extend(monomial_basis(system, group, DegreeProfile::Bidegree(p, k - p))?);
            }
            Ok(out)
        }
        _ => Err(Error::KindMismatch {
            group: group.into(),
            message: format!("no monomial basis for {profile:?}"),
        }),
    }
}

fn target_dimension(params: &KernelParams, flavor: RandomFlavor) -> Result<bool> {
    let nonzero = match (*params, flavor) {
        (KernelParams::Real { m, k }, RandomFlavor::Homogeneous) => !dim_homogeneous(m, k).is_zero(),
        (KernelParams::Real { m, k }, RandomFlavor::Harmonic) => !dim_spherical(m, k).is_zero(),
        (KernelParams::Real { .. }, _) => {
            return Err(Error::InvalidParams("symplectic flavors need symplectic parameters".into()))
        }
        (KernelParams::Complex { n, p, q }, RandomFlavor::Homogeneous) => !dim_bihomogeneous(n, p, q).is_zero(),
        (KernelParams::Complex { n, p, q }, RandomFlavor::Harmonic) => !dim_complex(n, p, q).is_zero(),
        (KernelParams::Complex { .. }, _) => {
            return Err(Error::InvalidParams("symplectic flavors need symplectic parameters".into()))
        }
        (KernelParams::Symplectic { n, p, q }, RandomFlavor::Homogeneous) => !dim_bihomogeneous(2 * n, p, q).is_zero(),
        (KernelParams::Symplectic { n, p, q }, RandomFlavor::Harmonic) => !dim_complex(2 * n, p, q).is_zero(),
        (KernelParams::Symplectic { n, p, q }, RandomFlavor::Symplectic) => !dim_symplectic_r(n, p, q).is_zero(),
        (KernelParams::Symplectic { n, p, q }, RandomFlavor::SymplecticHarmonic) => {
            !dim_symplectic_hs(n, p, q).is_zero()
        }
    };
    Ok(nonzero)
}

/// A seeded random element of the space selected by `params` and `flavor`,
/// in the standard system of `params` and the group `x` (real) or `z`.
///
/// Coefficients are drawn uniformly from the integers `[−9, 9]` (real case)
/// or the Gaussian integers with both parts in `[−9, 9]` (complex cases)
/// with a ChaCha8 stream seeded from `seed`, then projected onto the target
/// space. Draws are repeated until the result is nonzero.
pub fn random_poly(seed: u64, params: &KernelParams, flavor: RandomFlavor) -> Result<SparsePolynomial> {
    if !target_dimension(params, flavor)? {
        return Err(Error::ZeroDimensional);
    }
    let sys = standard_system(params)?;
    let (group, _) = kernel_groups(params);
    let ctx = OperatorContext::new(&sys, group)?;
    let profile = match *params {
        KernelParams::Real { k, .. } => DegreeProfile::Degree(k),
        KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. } => DegreeProfile::Bidegree(p, q),
    };
    let basis = monomial_basis(&sys, group, profile)?;
    let complex = ctx.is_complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let terms = basis.iter().map(|m| {
            let re = rng.gen_range(-9i64..=9);
            let im = if complex { rng.gen_range(-9i64..=9) } else { 0 };
            (m.clone(), ExactScalar::gaussian(re, im))
        });
        let raw = SparsePolynomial::from_terms(&sys, terms.collect::<Vec<_>>());
        let out = match flavor {
            RandomFlavor::Homogeneous => raw,
            RandomFlavor::Harmonic if complex => proj_harmonic_complex(&ctx, &raw, 0)?,
            RandomFlavor::Harmonic => proj_harmonic_real(&ctx, &raw, 0)?,
            RandomFlavor::Symplectic => proj_symplectic(&ctx, &raw, SympOrientation::Edag)?,
            RandomFlavor::SymplecticHarmonic => {
                let s = proj_symplectic(&ctx, &raw, SympOrientation::Edag)?;
                proj_harmonic_complex(&ctx, &s, 0)?
            }
        };
        if !out.is_zero() {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let sys = VariableSystem::builder().real("x", 3).complex("z", 2).build().unwrap();
        assert_eq!(monomial_basis(&sys, "x", DegreeProfile::Degree(2)).unwrap().len(), 6);
        assert_eq!(monomial_basis(&sys, "z", DegreeProfile::Bidegree(2, 1)).unwrap().len(), 6);
        assert_eq!(monomial_basis(&sys, "z", DegreeProfile::Degree(1)).unwrap().len(), 4);
    }

    #[test]
    fn seeded_and_in_target() {
        let params = KernelParams::Real { m: 3, k: 3 };
        let a = random_poly(7, &params, RandomFlavor::Harmonic).unwrap();
        let b = random_poly(7, &params, RandomFlavor::Harmonic).unwrap();
        assert_eq!(a, b);
        let ctx = OperatorContext::new(a.system(), "x").unwrap();
        assert!(ctx.delta(&a).is_zero());

        let sp = KernelParams::Symplectic { n: 1, p: 1, q: 2 };
        let r = random_poly(3, &sp, RandomFlavor::Symplectic).unwrap();
        let ctx = OperatorContext::new(r.system(), "z").unwrap();
        assert!(ctx.twist(&r, crate::operators::Twist::Edag).unwrap().is_zero());
    }

    #[test]
    fn zero_dimensional_target() {
        // H^S_{1,1} in quaternionic dimension 1 is zero
        let sp = KernelParams::Symplectic { n: 1, p: 1, q: 1 };
        let hs = crate::specfun::dim_symplectic_hs(1, 1, 1);
        if hs.is_zero() {
            assert_eq!(random_poly(0, &sp, RandomFlavor::SymplecticHarmonic), Err(Error::ZeroDimensional));
        }
    }
}
