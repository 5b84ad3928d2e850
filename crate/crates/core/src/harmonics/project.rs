use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operators::{OperatorContext, Twist};
use crate::poly::{Accumulator, DegreeProfile, SparsePolynomial};
use crate::scalar::{rat_int, ExactScalar};
use crate::specfun::{factorial_q, pochhammer};
use crate::system::Kind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Real,
    Complex,
    Symplectic,
}

/// Which twisted operator the symplectic projector annihilates with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SympOrientation {
    /// Onto `ker E†`, for bidegree `(p,q)` with `p ≤ q`.
    Edag,
    /// Onto `ker E`, for `p ≥ q`; the conjugate of the `Edag` projector.
    E,
}

/// One summand of a Fischer decomposition: `component = factor^index · core`
/// with `factor` either `‖·‖²` or the twisted operator `E` (resp. `E†`).
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub index: u32,
    pub core: SparsePolynomial,
    pub component: SparsePolynomial,
}

fn real_degree(ctx: &OperatorContext, p: &SparsePolynomial) -> Result<Option<u32>> {
    match p.degree_profile_group(ctx.group()) {
        DegreeProfile::Zero => Ok(None),
        DegreeProfile::Degree(k) => Ok(Some(k)),
        DegreeProfile::Bidegree(a, b) => Ok(Some(a + b)),
        DegreeProfile::Inhomogeneous => Err(Error::Inhomogeneous(ctx.group().name.clone())),
    }
}

fn bidegree(ctx: &OperatorContext, p: &SparsePolynomial) -> Result<Option<(u32, u32)>> {
    match p.degree_profile_group(ctx.group()) {
        DegreeProfile::Zero => Ok(None),
        DegreeProfile::Bidegree(a, b) => Ok(Some((a, b))),
        DegreeProfile::Degree(_) => Err(Error::KindMismatch {
            group: ctx.group().name.clone(),
            message: "bidegree needs a complex group".into(),
        }),
        DegreeProfile::Inhomogeneous => Err(Error::Inhomogeneous(ctx.group().name.clone())),
    }
}

fn sign(j: u32) -> BigRational {
    if j % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `Proj^k_ℓ = Σ_j α_j ‖x‖^{2j} Δ^{j+ℓ}` on a real group of length `m ≥ 3`,
/// `α_j = (−1)^j h / (4^{j+ℓ} j! ℓ!) · 1/(h−j)_{j+ℓ+1}`, `h = m/2 + k − 2ℓ − 1`.
pub fn proj_harmonic_real(ctx: &OperatorContext, p: &SparsePolynomial, ell: u32) -> Result<SparsePolynomial> {
    let g = ctx.group();
    if g.kind != Kind::Real {
        return Err(Error::KindMismatch {
            group: g.name.clone(),
            message: "the real harmonic projector needs a real group".into(),
        });
    }
    if g.len < 3 {
        return Err(Error::InvalidParams(format!("harmonic projector needs m >= 3, got {}", g.len)));
    }
    let Some(k) = real_degree(ctx, p)? else {
        return Ok(p.clone());
    };
    if ell > k / 2 {
        return Err(Error::OutOfRange(format!("ell = {ell} exceeds floor(k/2) for k = {k}")));
    }
    let h = BigRational::new(BigInt::from(g.len), BigInt::from(2)) + rat_int(k as i64 - 2 * ell as i64 - 1);
    let r2 = ctx.normsq();
    let mut d = ctx.delta_pow(p, ell);
    let mut r2j = SparsePolynomial::one(ctx.system());
    let mut acc = Accumulator::new(ctx.system());
    for j in 0..=(k / 2 - ell) {
        if j > 0 {
            d = ctx.delta(&d);
            r2j = &r2j * &r2;
        }
        if d.is_zero() {
            break;
        }
        let shifted = &h - rat_int(j as i64);
        let alpha = sign(j) * &h
            / (rat_int(4).pow((j + ell) as i32) * factorial_q(j) * factorial_q(ell) * pochhammer(&shifted, j + ell + 1));
        acc.add_scaled(&(&r2j * &d), &ExactScalar::real(alpha));
    }
    Ok(acc.finish())
}

/// `Proj^{p,q}_ℓ = Σ_j β_j ‖z‖^{2j} Δ_z^{j+ℓ}` on a complex group of length `n ≥ 2`,
/// `β_j = (−1)^j (n−1+p+q−2ℓ)/(j! ℓ!) · (n−2+p+q−j−2ℓ)!/(n−1+p+q−ℓ)!`.
pub fn proj_harmonic_complex(ctx: &OperatorContext, p: &SparsePolynomial, ell: u32) -> Result<SparsePolynomial> {
    let g = ctx.group();
    if g.len < 2 {
        return Err(Error::InvalidParams(format!(
            "complex harmonic projector needs n >= 2, got {}",
            g.len
        )));
    }
    let Some((dp, dq)) = bidegree(ctx, p)? else {
        return Ok(p.clone());
    };
    let nu = dp.min(dq);
    if ell > nu {
        return Err(Error::OutOfRange(format!("ell = {ell} exceeds min(p,q) = {nu}")));
    }
    let n = g.len as i64;
    let top = rat_int(n - 1 + (dp + dq) as i64 - 2 * ell as i64);
    let r2 = ctx.normsq();
    let mut d = ctx.delta_pow(p, ell);
    let mut r2j = SparsePolynomial::one(ctx.system());
    let mut acc = Accumulator::new(ctx.system());
    for j in 0..=(nu - ell) {
        if j > 0 {
            d = ctx.delta(&d);
            r2j = &r2j * &r2;
        }
        if d.is_zero() {
            break;
        }
        // (n−2+p+q−j−2ℓ)! / (n−1+p+q−ℓ)! = 1 / (n−1+p+q−j−2ℓ)_{j+ℓ+1}
        let low = rat_int(n - 1 + (dp + dq) as i64 - j as i64 - 2 * ell as i64);
        let beta = sign(j) * &top / (factorial_q(j) * factorial_q(ell) * pochhammer(&low, j + ell + 1));
        acc.add_scaled(&(&r2j * &d), &ExactScalar::real(beta));
    }
    Ok(acc.finish())
}

/// `γ_j = (−1)^j / (j! (|q−p|+2)_j)`.
fn gamma(j: u32, diff: u32) -> BigRational {
    sign(j) / (factorial_q(j) * pochhammer(&rat_int(diff as i64 + 2), j))
}

/// `Proj^{p,q}_{E†} = Σ_{j≤p} γ_j E^j (E†)^j` for `p ≤ q`; the `E` orientation
/// is obtained by conjugation, `Proj^{q,p}_E(P) = conj(Proj^{p,q}_{E†}(conj P))`.
pub fn proj_symplectic(ctx: &OperatorContext, p: &SparsePolynomial, orientation: SympOrientation) -> Result<SparsePolynomial> {
    match orientation {
        SympOrientation::E => {
            let mirrored = proj_symplectic(ctx, &p.conjugate(), SympOrientation::Edag)?;
            Ok(mirrored.conjugate())
        }
        SympOrientation::Edag => {
            let Some((dp, dq)) = bidegree(ctx, p)? else {
                return Ok(p.clone());
            };
            if dp > dq {
                return Err(Error::InvalidParams(format!(
                    "the E† projector needs p <= q, got ({dp},{dq})"
                )));
            }
            let mut acc = Accumulator::new(ctx.system());
            acc.add_poly(p);
            let mut down = p.clone();
            for j in 1..=dp {
                down = ctx.twist(&down, Twist::Edag)?;
                if down.is_zero() {
                    break;
                }
                let up = ctx.twist_pow(&down, Twist::E, j)?;
                acc.add_scaled(&up, &ExactScalar::real(gamma(j, dq - dp)));
            }
            Ok(acc.finish())
        }
    }
}

/// `κ^{p,q}_{a,b} = b!/(b−a)! · (q−p−b+1)_a` for `a ≤ b`, and 0 for `a > b`.
pub fn kappa(p: u32, q: u32, a: u32, b: u32) -> BigRational {
    if a > b {
        return BigRational::zero();
    }
    let falling = factorial_q(b) / factorial_q(b - a);
    falling * pochhammer(&rat_int(q as i64 - p as i64 - b as i64 + 1), a)
}

/// Fischer decomposition of a (bi)homogeneous polynomial in the context's group.
///
/// Real and complex: `P = Σ_j ‖·‖^{2j} H_j`. Symplectic with `p ≤ q`:
/// `P = Σ_j E^j R_j` with `E† R_j = 0`; for `p > q` the roles of `E` and `E†`
/// are exchanged through conjugation.
pub fn decompose(ctx: &OperatorContext, p: &SparsePolynomial, flavor: Flavor) -> Result<Vec<Component>> {
    match flavor {
        Flavor::Real => {
            let Some(k) = real_degree(ctx, p)? else {
                return Ok(Vec::new());
            };
            let r2 = ctx.normsq();
            (0..=k / 2)
                .map(|j| {
                    let core = proj_harmonic_real(ctx, p, j)?;
                    let component = &r2.power(j) * &core;
                    Ok(Component { index: j, core, component })
                })
                .collect()
        }
        Flavor::Complex => {
            let Some((dp, dq)) = bidegree(ctx, p)? else {
                return Ok(Vec::new());
            };
            let r2 = ctx.normsq();
            (0..=dp.min(dq))
                .map(|j| {
                    let core = proj_harmonic_complex(ctx, p, j)?;
                    let component = &r2.power(j) * &core;
                    Ok(Component { index: j, core, component })
                })
                .collect()
        }
        Flavor::Symplectic => {
            let Some((dp, dq)) = bidegree(ctx, p)? else {
                return Ok(Vec::new());
            };
            if dp > dq {
                let mirrored = decompose(ctx, &p.conjugate(), Flavor::Symplectic)?;
                return Ok(mirrored
                    .into_iter()
                    .map(|c| Component {
                        index: c.index,
                        core: c.core.conjugate(),
                        component: c.component.conjugate(),
                    })
                    .collect());
            }
            let mut out = Vec::new();
            let mut down = p.clone();
            for j in 0..=dp {
                if j > 0 {
                    down = ctx.twist(&down, Twist::Edag)?;
                }
                // (E†)^j P = Σ_{i≥j} κ E^{i−j} R_i, and the projector keeps i = j only
                let (pj, qj) = (dp - j, dq + j);
                let projected = proj_symplectic(ctx, &down, SympOrientation::Edag)?;
                let scale = kappa(pj, qj, j, j);
                let core = projected.scale(&ExactScalar::real(scale.recip()));
                let component = ctx.twist_pow(&core, Twist::E, j)?;
                out.push(Component { index: j, core, component });
            }
            Ok(out)
        }
    }
}
