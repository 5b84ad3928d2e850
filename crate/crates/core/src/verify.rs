//! Identity suites: task enumeration over parameter grids, per-task seeding
//! and execution into [`VerificationReport`]s.
//!
//! Every task is pure. Its seed is derived from the base seed, the identity
//! and the parameters, so reports do not depend on scheduling.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harmonics::{
    decompose, kappa, kernel, kernel_by_projection, monomial_basis, proj_harmonic_complex, proj_harmonic_real,
    proj_symplectic, random_poly, standard_system, Flavor, KernelKind, RandomFlavor, SympOrientation,
};
use crate::linalg::rank_of_images;
use crate::operators::{EulerVariant, OperatorContext, Twist};
use crate::params::KernelParams;
use crate::pizzetti::{
    apply_i_closed_form, i2_real_form_pair, normalized_plane_wave, plane_wave, verify_planewave, IOp, Restriction, StiefelContext,
};
use crate::poly::{Accumulator, DegreeProfile, SparsePolynomial};
use crate::report::{Caps, VerificationReport};
use crate::scalar::{rat_int, ExactScalar};
use crate::specfun::{
    dim_bihomogeneous, dim_complex, dim_homogeneous, dim_spherical, dim_symplectic_hs, dim_symplectic_r, pochhammer,
};
use crate::system::VariableSystem;

/// Random inputs per task for the reproduction suites.
pub const REPRODUCTION_SAMPLES: u64 = 5;
/// Random inputs per task for the operator-identity suites.
pub const OPERATOR_SAMPLES: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Spherical,
    Complex,
    Symplectic,
    Pizzetti,
    Planewave,
}

impl Suite {
    fn contains(self, identity: Identity) -> bool {
        self == Suite::All || identity.suite() == self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    SphericalReproduction,
    SphericalFischerReproduction,
    SphericalProportionality,
    SphericalFischerDuality,
    SphericalProjector,
    SphericalKernelProjection,
    SphericalDimension,
    ComplexReproduction,
    ComplexFischerReproduction,
    ComplexProportionality,
    ComplexFischerDuality,
    ComplexProjector,
    ComplexKernelProjection,
    ComplexHermitianSymmetry,
    ComplexDimension,
    SymplecticSl2,
    SymplecticTwistCommutes,
    SymplecticKappa,
    SymplecticProjector,
    SymplecticFischerReproduction,
    SymplecticReproduction,
    SymplecticLadder,
    SymplecticClosedForm,
    SymplecticDimension,
    PizzettiLemma,
    PizzettiDegreeSelection,
    PizzettiSphereConsistency,
    PizzettiSymmetry,
    PizzettiJMatrix,
    Planewave,
}

impl Identity {
    pub const ALL: [Identity; 30] = [
        Identity::SphericalReproduction,
        Identity::SphericalFischerReproduction,
        Identity::SphericalProportionality,
        Identity::SphericalFischerDuality,
        Identity::SphericalProjector,
        Identity::SphericalKernelProjection,
        Identity::SphericalDimension,
        Identity::ComplexReproduction,
        Identity::ComplexFischerReproduction,
        Identity::ComplexProportionality,
        Identity::ComplexFischerDuality,
        Identity::ComplexProjector,
        Identity::ComplexKernelProjection,
        Identity::ComplexHermitianSymmetry,
        Identity::ComplexDimension,
        Identity::SymplecticSl2,
        Identity::SymplecticTwistCommutes,
        Identity::SymplecticKappa,
        Identity::SymplecticProjector,
        Identity::SymplecticFischerReproduction,
        Identity::SymplecticReproduction,
        Identity::SymplecticLadder,
        Identity::SymplecticClosedForm,
        Identity::SymplecticDimension,
        Identity::PizzettiLemma,
        Identity::PizzettiDegreeSelection,
        Identity::PizzettiSphereConsistency,
        Identity::PizzettiSymmetry,
        Identity::PizzettiJMatrix,
        Identity::Planewave,
    ];

    /// Report id. Plane-wave reports carry the case in their id instead.
    pub fn id(self) -> &'static str {
        match self {
            Identity::SphericalReproduction => "spherical.reproduction",
            Identity::SphericalFischerReproduction => "spherical.fischer_reproduction",
            Identity::SphericalProportionality => "spherical.proportionality",
            Identity::SphericalFischerDuality => "spherical.fischer_duality",
            Identity::SphericalProjector => "spherical.projector",
            Identity::SphericalKernelProjection => "spherical.kernel_projection",
            Identity::SphericalDimension => "spherical.dimension",
            Identity::ComplexReproduction => "complex.reproduction",
            Identity::ComplexFischerReproduction => "complex.fischer_reproduction",
            Identity::ComplexProportionality => "complex.proportionality",
            Identity::ComplexFischerDuality => "complex.fischer_duality",
            Identity::ComplexProjector => "complex.projector",
            Identity::ComplexKernelProjection => "complex.kernel_projection",
            Identity::ComplexHermitianSymmetry => "complex.hermitian_symmetry",
            Identity::ComplexDimension => "complex.dimension",
            Identity::SymplecticSl2 => "symplectic.sl2",
            Identity::SymplecticTwistCommutes => "symplectic.twist_commutes",
            Identity::SymplecticKappa => "symplectic.kappa",
            Identity::SymplecticProjector => "symplectic.projector",
            Identity::SymplecticFischerReproduction => "symplectic.fischer_reproduction",
            Identity::SymplecticReproduction => "symplectic.reproduction",
            Identity::SymplecticLadder => "symplectic.ladder",
            Identity::SymplecticClosedForm => "symplectic.closed_form",
            Identity::SymplecticDimension => "symplectic.dimension",
            Identity::PizzettiLemma => "pizzetti.lemma",
            Identity::PizzettiDegreeSelection => "pizzetti.degree_selection",
            Identity::PizzettiSphereConsistency => "pizzetti.sphere_consistency",
            Identity::PizzettiSymmetry => "pizzetti.symmetry",
            Identity::PizzettiJMatrix => "pizzetti.j_matrix",
            Identity::Planewave => "planewave",
        }
    }

    pub fn suite(self) -> Suite {
        match self.id().split('.').next() {
            Some("spherical") => Suite::Spherical,
            Some("complex") => Suite::Complex,
            Some("symplectic") => Suite::Symplectic,
            Some("pizzetti") => Suite::Pizzetti,
            _ => Suite::Planewave,
        }
    }

    fn seeded(self) -> bool {
        !matches!(
            self,
            Identity::SphericalKernelProjection
                | Identity::SphericalDimension
                | Identity::ComplexKernelProjection
                | Identity::ComplexHermitianSymmetry
                | Identity::ComplexDimension
                | Identity::SymplecticClosedForm
                | Identity::SymplecticDimension
                | Identity::PizzettiLemma
                | Identity::PizzettiDegreeSelection
                | Identity::PizzettiSymmetry
                | Identity::Planewave
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Real,
    Complex,
    Symplectic,
}

/// Grid restrictions. Unset fields take the default grids:
/// real `m ∈ {3,4,5}, k ≤ 4`; complex `n ∈ {2,3}, p,q ≤ 3`; symplectic
/// `n ∈ {1,2}, p ≤ q, p+q ≤ 5`, with `p,q ≤ 2` from `n = 2` on. Dimension
/// oracles and the action lemmas use `k ≤ 5` and symplectic `p ≤ q ≤ 3`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridSpec {
    pub case: Option<Case>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub kmax: Option<u32>,
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub pqmax: Option<u32>,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if let Some(m) = self.m {
            KernelParams::Real { m, k: 0 }.validate()?;
        }
        if self.n == Some(0) {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if self.case == Some(Case::Complex) && self.n == Some(1) {
            KernelParams::Complex { n: 1, p: 0, q: 0 }.validate()?;
        }
        if let (Some(Case::Symplectic), Some(p), Some(q)) = (self.case, self.p, self.q) {
            KernelParams::Symplectic { n: 1, p, q }.validate()?;
        }
        Ok(())
    }

    fn wants(&self, case: Case) -> bool {
        self.case.is_none_or(|c| c == case)
    }

    fn range(fixed: Option<u32>, lo: u32, hi: u32) -> Vec<u32> {
        match fixed {
            Some(v) => vec![v],
            None => (lo..=hi).collect(),
        }
    }

    fn real(&self, extended: bool) -> Vec<KernelParams> {
        if !self.wants(Case::Real) {
            return Vec::new();
        }
        let kmax = self.kmax.unwrap_or(if extended { 5 } else { 4 });
        let mut out = Vec::new();
        for m in Self::range(self.m, 3, 5) {
            for k in Self::range(self.k, 0, kmax) {
                out.push(KernelParams::Real { m, k });
            }
        }
        out
    }

    fn complex(&self) -> Vec<KernelParams> {
        if !self.wants(Case::Complex) {
            return Vec::new();
        }
        let top = self.pqmax.unwrap_or(3);
        let mut out = Vec::new();
        for n in Self::range(self.n, 2, 3) {
            for p in Self::range(self.p, 0, top) {
                for q in Self::range(self.q, 0, top) {
                    out.push(KernelParams::Complex { n, p, q });
                }
            }
        }
        out
    }

    fn symplectic(&self, extended: bool) -> Vec<KernelParams> {
        if !self.wants(Case::Symplectic) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for n in Self::range(self.n, 1, 2) {
            let top = self.pqmax.unwrap_or(if extended { 3 } else { 5 });
            for p in Self::range(self.p, 0, top) {
                for q in Self::range(self.q, 0, top) {
                    let explicit = self.p.is_some() && self.q.is_some();
                    let keep = explicit
                        || (p <= q
                            && (self.pqmax.is_some()
                                || extended
                                || (p + q <= 5 && (n == 1 || q <= 2))));
                    if keep {
                        out.push(KernelParams::Symplectic { n, p, q });
                    }
                }
            }
        }
        out
    }

    fn points(&self, identity: Identity) -> Vec<KernelParams> {
        match identity {
            Identity::SphericalDimension => self.real(true),
            Identity::SphericalReproduction
            | Identity::SphericalFischerReproduction
            | Identity::SphericalProportionality
            | Identity::SphericalFischerDuality
            | Identity::SphericalProjector
            | Identity::SphericalKernelProjection
            | Identity::PizzettiDegreeSelection
            | Identity::PizzettiSphereConsistency
            | Identity::PizzettiSymmetry => self.real(false),
            Identity::ComplexReproduction
            | Identity::ComplexFischerReproduction
            | Identity::ComplexProportionality
            | Identity::ComplexFischerDuality
            | Identity::ComplexProjector
            | Identity::ComplexKernelProjection
            | Identity::ComplexHermitianSymmetry
            | Identity::ComplexDimension => self.complex(),
            Identity::PizzettiJMatrix => self
                .complex()
                .into_iter()
                .filter(|p| p.total_degree() == 2)
                .collect(),
            Identity::SymplecticDimension => self.symplectic(true),
            Identity::SymplecticReproduction => self
                .symplectic(false)
                .into_iter()
                .filter(|p| matches!(p, KernelParams::Symplectic { q, .. } if *q <= 2))
                .collect(),
            Identity::SymplecticSl2
            | Identity::SymplecticTwistCommutes
            | Identity::SymplecticKappa
            | Identity::SymplecticProjector
            | Identity::SymplecticFischerReproduction
            | Identity::SymplecticLadder
            | Identity::SymplecticClosedForm => self.symplectic(false),
            Identity::PizzettiLemma => {
                let mut v = self.real(true);
                v.extend(self.complex());
                v
            }
            Identity::Planewave => {
                let mut v = self.real(false);
                v.extend(self.complex());
                v.extend(self.symplectic(false));
                v
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Task {
    pub identity: Identity,
    pub params: KernelParams,
}

/// Every task of `suite` on the grid, in identity then parameter order.
pub fn tasks(suite: Suite, grid: &GridSpec) -> Vec<Task> {
    let mut out = Vec::new();
    for identity in Identity::ALL {
        if suite.contains(identity) {
            out.extend(grid.points(identity).into_iter().map(|params| Task { identity, params }));
        }
    }
    out
}

/// Seed of one task: FNV-1a over the identity and parameters, mixed with
/// the base seed through the SplitMix64 finalizer.
pub fn task_seed(base: u64, identity: Identity, params: &KernelParams) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in format!("{}/{}", identity.id(), params).bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = h ^ base;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn sample_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Run one task. `elapsed_ms` is left at zero.
pub fn run_task(task: &Task, base_seed: u64, caps: &Caps) -> VerificationReport {
    if task.identity == Identity::Planewave {
        return verify_planewave(&task.params, caps);
    }
    let mut report = VerificationReport::new(task.identity.id(), task.params);
    let seed = task_seed(base_seed, task.identity, &task.params);
    if task.identity.seeded() {
        report = report.with_seed(seed);
    }
    let outcome = run_identity(task.identity, &task.params, seed, caps, &mut report);
    report.absorb(outcome);
    report
}

fn run_identity(id: Identity, params: &KernelParams, seed: u64, caps: &Caps, r: &mut VerificationReport) -> Result<()> {
    params.validate()?;
    match id {
        Identity::SphericalReproduction => real_reproduction(params, seed, r),
        Identity::SphericalFischerReproduction => real_fischer_reproduction(params, seed, r),
        Identity::SphericalProportionality => real_proportionality(params, seed, r),
        Identity::SphericalFischerDuality | Identity::ComplexFischerDuality => fischer_duality(params, seed, r),
        Identity::SphericalProjector => real_projector(params, seed, r),
        Identity::SphericalKernelProjection | Identity::ComplexKernelProjection => {
            let direct = kernel(params, KernelKind::K)?;
            caps.guard_poly(&direct)?;
            r.check_eq(&direct, &kernel_by_projection(params, KernelKind::K)?);
            Ok(())
        }
        Identity::SphericalDimension => real_dimension(params, r),
        Identity::ComplexReproduction => complex_reproduction(params, seed, r),
        Identity::ComplexFischerReproduction => complex_fischer_reproduction(params, seed, r),
        Identity::ComplexProportionality => complex_proportionality(params, seed, r),
        Identity::ComplexProjector => complex_projector(params, seed, r),
        Identity::ComplexHermitianSymmetry => {
            let k = kernel(params, KernelKind::K)?;
            r.check_eq(&k.conjugate(), &k.swap_groups("z", "u")?);
            Ok(())
        }
        Identity::ComplexDimension => complex_dimension(params, r),
        Identity::SymplecticSl2 => sl2(params, seed, r),
        Identity::SymplecticTwistCommutes => twist_commutes(params, seed, r),
        Identity::SymplecticKappa => kappa_relations(params, seed, r),
        Identity::SymplecticProjector => symplectic_projector(params, seed, r),
        Identity::SymplecticFischerReproduction => symplectic_fischer_reproduction(params, seed, r),
        Identity::SymplecticReproduction => symplectic_reproduction(params, seed, r),
        Identity::SymplecticLadder => ladder(params, seed, r),
        Identity::SymplecticClosedForm => {
            for which in [KernelKind::ZS, KernelKind::KS] {
                let direct = kernel(params, which)?;
                caps.guard_poly(&direct)?;
                r.check_eq(&direct, &kernel_by_projection(params, which)?);
            }
            Ok(())
        }
        Identity::SymplecticDimension => symplectic_dimension(params, r),
        Identity::PizzettiLemma => lemma(params, r),
        Identity::PizzettiDegreeSelection => degree_selection(params, r),
        Identity::PizzettiSphereConsistency => sphere_consistency(params, seed, r),
        Identity::PizzettiSymmetry => {
            let ctx = StiefelContext::for_params(params)?;
            let f = plane_wave(params)?.poly();
            r.check_eq(&ctx.mean(&f).swap_groups("x", "y")?, &ctx.mean(&f.swap_groups("x", "y")?));
            Ok(())
        }
        Identity::PizzettiJMatrix => j_matrix(params, seed, r),
        Identity::Planewave => unreachable!("plane-wave tasks are dispatched in run_task"),
    }
}

// ---------------------------------------------------------------- helpers

/// A random element of the target space, or `None` if it is zero-dimensional.
fn draw(seed: u64, params: KernelParams, flavor: RandomFlavor) -> Result<Option<SparsePolynomial>> {
    match random_poly(seed, &params, flavor) {
        Ok(p) => Ok(Some(p)),
        Err(Error::ZeroDimensional) => Ok(None),
        Err(e) => Err(e),
    }
}

fn with_degree(params: &KernelParams, a: u32, b: u32) -> KernelParams {
    match *params {
        KernelParams::Real { m, .. } => KernelParams::Real { m, k: a },
        KernelParams::Complex { n, .. } => KernelParams::Complex { n, p: a, q: b },
        KernelParams::Symplectic { n, .. } => KernelParams::Symplectic { n, p: a, q: b },
    }
}

fn zero(sys: &Arc<VariableSystem>) -> SparsePolynomial {
    SparsePolynomial::zero(sys)
}

fn rational(r: BigRational) -> ExactScalar {
    ExactScalar::real(r)
}

fn big(n: &BigInt) -> ExactScalar {
    ExactScalar::real(BigRational::from_integer(n.clone()))
}

fn nullity(basis: &[SparsePolynomial], ops: &[&dyn Fn(&SparsePolynomial) -> SparsePolynomial]) -> usize {
    basis.len() - rank_of_images(basis, ops)
}

fn basis_polys(sys: &Arc<VariableSystem>, group: &str, profile: DegreeProfile) -> Result<Vec<SparsePolynomial>> {
    Ok(monomial_basis(sys, group, profile)?
        .into_iter()
        .map(|m| SparsePolynomial::monomial(sys, m, ExactScalar::one()))
        .collect())
}

fn components_sum(sys: &Arc<VariableSystem>, parts: &[crate::harmonics::Component]) -> SparsePolynomial {
    let mut acc = Accumulator::new(sys);
    for c in parts {
        acc.add_poly(&c.component);
    }
    acc.finish()
}

// ---------------------------------------------------------------- real

fn real_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { k, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "x")?;
    let kk = kernel(params, KernelKind::K)?;
    for i in 0..REPRODUCTION_SAMPLES {
        for j in 0..=k + 1 {
            let Some(h) = draw(sample_seed(seed, i) ^ j as u64, with_degree(params, j, 0), RandomFlavor::Harmonic)?
            else {
                continue;
            };
            let want = if j == k { h.rename_group("x", "y")? } else { zero(&sys) };
            r.check_eq(&ctx.spherical_inner(&kk, &h), &want);
        }
    }
    Ok(())
}

fn real_fischer_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { k, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "x")?;
    let z = kernel(params, KernelKind::Z)?;
    for i in 0..REPRODUCTION_SAMPLES {
        for j in k.saturating_sub(1)..=k + 1 {
            let Some(p) = draw(sample_seed(seed, i) ^ j as u64, with_degree(params, j, 0), RandomFlavor::Homogeneous)?
            else {
                continue;
            };
            let want = if j == k { p.rename_group("x", "y")? } else { zero(&sys) };
            r.check_eq(&ctx.fischer_pairing(&z, &p), &want);
        }
    }
    Ok(())
}

fn real_proportionality(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { m, k } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "x")?;
    let factor = rat_int(2).pow(k as i32) * pochhammer(&BigRational::new(BigInt::from(m), BigInt::from(2)), k);
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let Some(h) = draw(s, *params, RandomFlavor::Harmonic)? else { continue };
        let p = random_poly(s ^ 1, params, RandomFlavor::Homogeneous)?;
        let sphere = ctx.spherical_inner(&h, &p).constant_term().scale(&factor);
        r.check_scalar("2^k (m/2)_k <H,P>_S vs <H,P>_F", &sphere, &ctx.fischer_real(&h, &p)?);
        // cross-degree: both products vanish
        for j in [k as i64 - 2, k as i64 - 1, k as i64 + 1] {
            if j < 0 {
                continue;
            }
            let q = random_poly(s ^ (j as u64 + 2), &with_degree(params, j as u32, 0), RandomFlavor::Homogeneous)?;
            r.check_eq(&ctx.spherical_inner(&h, &q), &zero(&sys));
            r.check_scalar("cross-degree Fischer product", &ctx.fischer_real(&h, &q)?, &ExactScalar::zero());
        }
    }
    Ok(())
}

fn fischer_duality(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let (a, b) = match *params {
        KernelParams::Real { k, .. } => (k, 0),
        KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. } => (p, q),
    };
    let sys = standard_system(params)?;
    let group = if matches!(params, KernelParams::Real { .. }) { "x" } else { "z" };
    let ctx = OperatorContext::new(&sys, group)?;
    let up = match params {
        KernelParams::Real { .. } => with_degree(params, a + 2, 0),
        _ => with_degree(params, a + 1, b + 1),
    };
    let r2 = ctx.normsq();
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let p = random_poly(s, params, RandomFlavor::Homogeneous)?;
        let q = random_poly(s ^ 1, &up, RandomFlavor::Homogeneous)?;
        let lhs = ctx.fischer_pairing(&(&r2 * &p), &q);
        let rhs = ctx.fischer_pairing(&p, &ctx.delta(&q));
        r.check_eq(&lhs, &rhs);
        // the closed form agrees with literal differentiation
        r.check_eq(&lhs, &ctx.fischer_by_differentiation(&(&r2 * &p), &q));
    }
    Ok(())
}

fn real_projector(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { k, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "x")?;
    let r2 = ctx.normsq();
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let p = random_poly(s, params, RandomFlavor::Homogeneous)?;
        let h = proj_harmonic_real(&ctx, &p, 0)?;
        r.check_eq(&ctx.delta(&h), &zero(&sys));
        r.check_eq(&proj_harmonic_real(&ctx, &h, 0)?, &h);
        if k >= 2 {
            let q = random_poly(s ^ 1, &with_degree(params, k - 2, 0), RandomFlavor::Homogeneous)?;
            r.check_eq(&proj_harmonic_real(&ctx, &(&r2 * &q), 0)?, &zero(&sys));
        }
        let parts = decompose(&ctx, &p, Flavor::Real)?;
        r.check_eq(&components_sum(&sys, &parts), &p);
        for c in &parts {
            r.check_eq(&ctx.delta(&c.core), &zero(&sys));
        }
    }
    Ok(())
}

fn real_dimension(params: &KernelParams, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { m, k } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "x")?;
    let basis = basis_polys(&sys, "x", DegreeProfile::Degree(k))?;
    let lap = |p: &SparsePolynomial| ctx.delta(p);
    let brute = nullity(&basis, &[&lap]);
    r.check_scalar("dim H_k vs nullity of the Laplacian", &big(&dim_spherical(m, k)), &ExactScalar::int(brute as i64));
    let total: BigInt = (0..=k / 2).map(|j| dim_spherical(m, k - 2 * j)).sum();
    r.check_scalar("sum of dim H_(k-2j) vs dim P_k", &big(&total), &big(&dim_homogeneous(m, k)));
    Ok(())
}

// ---------------------------------------------------------------- complex

/// Bidegrees paired against a kernel of bidegree `(p,q)`: the diagonal one
/// and its neighbours, all with entries at most 3.
fn neighbours(p: u32, q: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(p, q)];
    for (a, b) in [(p + 1, q), (p, q + 1), (q, p)] {
        if a <= 3 && b <= 3 && !out.contains(&(a, b)) {
            out.push((a, b));
        }
    }
    if p > 0 && q > 0 {
        out.push((p - 1, q - 1));
    }
    out
}

fn complex_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { p, q, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    let kk = kernel(params, KernelKind::K)?;
    for i in 0..REPRODUCTION_SAMPLES {
        for (a, b) in neighbours(p, q) {
            let s = sample_seed(seed, i) ^ ((a as u64) << 8 | b as u64);
            let Some(h) = draw(s, with_degree(params, a, b), RandomFlavor::Harmonic)? else { continue };
            let want = if (a, b) == (p, q) { h.rename_group("z", "u")? } else { zero(&sys) };
            r.check_eq(&ctx.spherical_inner(&kk, &h), &want);
        }
    }
    Ok(())
}

fn complex_fischer_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { p, q, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    let z = kernel(params, KernelKind::Z)?;
    for i in 0..REPRODUCTION_SAMPLES {
        for (a, b) in neighbours(p, q) {
            let s = sample_seed(seed, i) ^ ((a as u64) << 8 | b as u64);
            let f = random_poly(s, &with_degree(params, a, b), RandomFlavor::Homogeneous)?;
            let want = if (a, b) == (p, q) { f.rename_group("z", "u")? } else { zero(&sys) };
            r.check_eq(&ctx.fischer_pairing(&z, &f), &want);
        }
    }
    Ok(())
}

fn complex_proportionality(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { n, p, q } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    let factor = pochhammer(&rat_int(n as i64), p + q);
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let Some(h) = draw(s, *params, RandomFlavor::Harmonic)? else { continue };
        let f = random_poly(s ^ 1, params, RandomFlavor::Homogeneous)?;
        let sphere = ctx.spherical_inner(&h, &f).constant_term().scale(&factor);
        r.check_scalar("(n)_(p+q) <H,P>_S vs <H,P>_F", &sphere, &ctx.fischer_complex(&h, &f)?);
        let mut cross = vec![(p + 1, q)];
        if p != q {
            cross.push((q, p));
        }
        if p > 0 && q > 0 {
            cross.push((p - 1, q - 1));
        }
        for (a, b) in cross {
            let g = random_poly(s ^ ((a as u64) << 8 | b as u64 | 1 << 20), &with_degree(params, a, b), RandomFlavor::Homogeneous)?;
            r.check_eq(&ctx.spherical_inner(&h, &g), &zero(&sys));
            r.check_scalar("cross-degree Fischer product", &ctx.fischer_complex(&h, &g)?, &ExactScalar::zero());
        }
    }
    Ok(())
}

fn complex_projector(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { p, q, .. } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    let r2 = ctx.normsq();
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let f = random_poly(s, params, RandomFlavor::Homogeneous)?;
        let h = proj_harmonic_complex(&ctx, &f, 0)?;
        r.check_eq(&ctx.delta(&h), &zero(&sys));
        r.check_eq(&proj_harmonic_complex(&ctx, &h, 0)?, &h);
        if p > 0 && q > 0 {
            let g = random_poly(s ^ 1, &with_degree(params, p - 1, q - 1), RandomFlavor::Homogeneous)?;
            r.check_eq(&proj_harmonic_complex(&ctx, &(&r2 * &g), 0)?, &zero(&sys));
        }
        let parts = decompose(&ctx, &f, Flavor::Complex)?;
        r.check_eq(&components_sum(&sys, &parts), &f);
        for c in &parts {
            r.check_eq(&ctx.delta(&c.core), &zero(&sys));
        }
    }
    Ok(())
}

fn complex_dimension(params: &KernelParams, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { n, p, q } = *params else { unreachable!() };
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    let basis = basis_polys(&sys, "z", DegreeProfile::Bidegree(p, q))?;
    let lap = |f: &SparsePolynomial| ctx.delta(f);
    let brute = nullity(&basis, &[&lap]);
    r.check_scalar("dim H_(p,q) vs nullity of the Laplacian", &big(&dim_complex(n, p, q)), &ExactScalar::int(brute as i64));
    let total: BigInt = (0..=p.min(q)).map(|j| dim_complex(n, p - j, q - j)).sum();
    r.check_scalar("sum of dim H_(p-j,q-j) vs dim P_(p,q)", &big(&total), &big(&dim_bihomogeneous(n, p, q)));
    Ok(())
}

// ---------------------------------------------------------------- symplectic

fn symplectic_ctx(params: &KernelParams) -> Result<(Arc<VariableSystem>, OperatorContext)> {
    let sys = standard_system(params)?;
    let ctx = OperatorContext::new(&sys, "z")?;
    Ok((sys, ctx))
}

fn sl2(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let (_, ctx) = symplectic_ctx(params)?;
    let h = |f: &SparsePolynomial| -> Result<SparsePolynomial> {
        Ok(&ctx.euler(f, EulerVariant::Antiholomorphic)? - &ctx.euler(f, EulerVariant::Holomorphic)?)
    };
    let e = |f: &SparsePolynomial| ctx.twist(f, Twist::E);
    let ed = |f: &SparsePolynomial| ctx.twist(f, Twist::Edag);
    for i in 0..OPERATOR_SAMPLES {
        let f = random_poly(sample_seed(seed, i), params, RandomFlavor::Homogeneous)?;
        let edf = ed(&f)?;
        let ef = e(&f)?;
        r.check_eq(&(&h(&edf)? - &ed(&h(&f)?)?), &edf.scale(&ExactScalar::int(2)));
        r.check_eq(&(&h(&ef)? - &e(&h(&f)?)?), &ef.scale(&ExactScalar::int(-2)));
        r.check_eq(&(&ed(&ef)? - &e(&edf)?), &h(&f)?);
    }
    Ok(())
}

fn twist_commutes(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let (_, ctx) = symplectic_ctx(params)?;
    let r2 = ctx.normsq();
    for i in 0..OPERATOR_SAMPLES {
        let f = random_poly(sample_seed(seed, i), params, RandomFlavor::Homogeneous)?;
        for t in [Twist::E, Twist::Edag] {
            r.check_eq(&ctx.twist(&ctx.delta(&f), t)?, &ctx.delta(&ctx.twist(&f, t)?));
            r.check_eq(&ctx.twist(&(&r2 * &f), t)?, &(&r2 * &ctx.twist(&f, t)?));
        }
    }
    Ok(())
}

fn kappa_relations(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { p, q, .. } = *params else { unreachable!() };
    let (_, ctx) = symplectic_ctx(params)?;
    for i in 0..OPERATOR_SAMPLES {
        let Some(rr) = draw(sample_seed(seed, i), *params, RandomFlavor::Symplectic)? else { continue };
        for b in 0..=3 {
            let up = ctx.twist_pow(&rr, Twist::E, b)?;
            for a in 0..=3 {
                let lhs = ctx.twist_pow(&up, Twist::Edag, a)?;
                let rhs = if a > b {
                    zero(ctx.system())
                } else {
                    ctx.twist_pow(&rr, Twist::E, b - a)?.scale(&rational(kappa(p, q, a, b)))
                };
                r.check_eq(&lhs, &rhs);
            }
        }
    }
    Ok(())
}

fn symplectic_projector(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { p, q, .. } = *params else { unreachable!() };
    let (sys, ctx) = symplectic_ctx(params)?;
    let z0 = zero(&sys);
    for i in 0..OPERATOR_SAMPLES {
        let s = sample_seed(seed, i);
        let f = random_poly(s, params, RandomFlavor::Homogeneous)?;
        let rr = proj_symplectic(&ctx, &f, SympOrientation::Edag)?;
        r.check_eq(&ctx.twist(&rr, Twist::Edag)?, &z0);
        r.check_eq(&proj_symplectic(&ctx, &rr, SympOrientation::Edag)?, &rr);
        if p > 0 {
            if let Some(g) = draw(s ^ 1, with_degree(params, p - 1, q + 1), RandomFlavor::Symplectic)? {
                let eg = ctx.twist(&g, Twist::E)?;
                r.check_eq(&proj_symplectic(&ctx, &eg, SympOrientation::Edag)?, &z0);
            }
        }
        // the two projectors commute
        let hs = proj_harmonic_complex(&ctx, &rr, 0)?;
        let sh = proj_symplectic(&ctx, &proj_harmonic_complex(&ctx, &f, 0)?, SympOrientation::Edag)?;
        r.check_eq(&hs, &sh);
        // the mirrored projector lands in ker E
        let mirrored = proj_symplectic(&ctx, &f.conjugate(), SympOrientation::E)?;
        r.check_eq(&ctx.twist(&mirrored, Twist::E)?, &z0);
        r.check_eq(&mirrored, &rr.conjugate());
        let parts = decompose(&ctx, &f, Flavor::Symplectic)?;
        r.check_eq(&components_sum(&sys, &parts), &f);
        for c in &parts {
            r.check_eq(&ctx.twist(&c.core, Twist::Edag)?, &z0);
        }
    }
    Ok(())
}

fn symplectic_fischer_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { p, q, .. } = *params else { unreachable!() };
    let (sys, ctx) = symplectic_ctx(params)?;
    let zs = kernel(params, KernelKind::ZS)?;
    for i in 0..REPRODUCTION_SAMPLES {
        for k in 0..=p {
            let s = sample_seed(seed, i) ^ k as u64;
            let Some(rr) = draw(s, with_degree(params, p - k, q + k), RandomFlavor::Symplectic)? else { continue };
            let c = ctx.twist_pow(&rr, Twist::E, k)?;
            let want = if k == 0 { c.rename_group("z", "u")? } else { zero(&sys) };
            r.check_eq(&ctx.fischer_pairing(&zs, &c), &want);
        }
    }
    Ok(())
}

fn symplectic_reproduction(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { p, q, .. } = *params else { unreachable!() };
    let (sys, ctx) = symplectic_ctx(params)?;
    let ks = kernel(params, KernelKind::KS)?;
    let r2 = ctx.normsq();
    let mut vacuous = 0usize;
    for i in 0..REPRODUCTION_SAMPLES {
        for j in 0..=p {
            for k in 0..=(p - j) {
                let s = sample_seed(seed, i) ^ ((j as u64) << 8 | k as u64);
                let Some(h) = draw(s, with_degree(params, p - j - k, q + k - j), RandomFlavor::SymplecticHarmonic)?
                else {
                    vacuous += 1;
                    continue;
                };
                let c = &r2.power(j) * &ctx.twist_pow(&h, Twist::E, k)?;
                let want = if j == 0 && k == 0 { h.rename_group("z", "u")? } else { zero(&sys) };
                r.check_eq(&ctx.spherical_inner(&ks, &c), &want);
            }
        }
        // other bidegrees of the same charge or higher degree
        for (a, b) in [(p, q + 1), (p + 1, q + 1)] {
            let s = sample_seed(seed, i) ^ (1 << 20 | (a as u64) << 8 | b as u64);
            if let Some(h) = draw(s, with_degree(params, a, b), RandomFlavor::SymplecticHarmonic)? {
                r.check_eq(&ctx.spherical_inner(&ks, &h), &zero(&sys));
            }
        }
    }
    if vacuous > 0 {
        r.note(format!("{vacuous} zero-dimensional symplectic-harmonic targets skipped"));
    }
    Ok(())
}

fn ladder(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { p, q, .. } = *params else { unreachable!() };
    let (sys, ctx) = symplectic_ctx(params)?;
    let lhs = ctx.delta(&kernel(params, KernelKind::ZS)?);
    if p == 0 {
        r.check_eq(&lhs, &zero(&sys));
        return Ok(());
    }
    let nu = OperatorContext::new(&sys, "u")?.normsq();
    let lower = with_degree(params, p - 1, q - 1);
    r.check_eq(&lhs, &(&nu * &kernel(&lower, KernelKind::ZS)?));
    // paired with random P: ⟨Δ_z Z^S, P⟩_∂ = ⟨Z^S, ‖z‖²P⟩_∂ = ‖u‖² Proj_{E†}(P)(u)
    for i in 0..OPERATOR_SAMPLES {
        let Some(f) = draw(sample_seed(seed, i), lower, RandomFlavor::Homogeneous)? else { continue };
        let projected = proj_symplectic(&ctx, &f, SympOrientation::Edag)?.rename_group("z", "u")?;
        r.check_eq(&ctx.fischer_pairing(&lhs, &f), &(&nu * &projected));
    }
    Ok(())
}

fn symplectic_dimension(params: &KernelParams, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Symplectic { n, p, q } = *params else { unreachable!() };
    let (sys, ctx) = symplectic_ctx(params)?;
    let lap = |f: &SparsePolynomial| ctx.delta(f);
    let edag = |f: &SparsePolynomial| ctx.twist(f, Twist::Edag).expect("even length group");
    let dim_r = |a: u32, b: u32| -> Result<usize> {
        Ok(nullity(&basis_polys(&sys, "z", DegreeProfile::Bidegree(a, b))?, &[&edag]))
    };
    let dim_hs = |a: u32, b: u32| -> Result<usize> {
        Ok(nullity(&basis_polys(&sys, "z", DegreeProfile::Bidegree(a, b))?, &[&lap, &edag]))
    };
    let int = |v: usize| ExactScalar::int(v as i64);
    let r_here = dim_r(p, q)?;
    let hs_here = dim_hs(p, q)?;
    r.check_scalar("dim R_(p,q) vs nullity of E†", &big(&dim_symplectic_r(n, p, q)), &int(r_here));
    r.check_scalar("dim H^S_(p,q) vs joint nullity of Laplacian and E†", &big(&dim_symplectic_hs(n, p, q)), &int(hs_here));
    // P_{p,q} = ⊕_j E^j R_{p−j,q+j}
    let mut sum_r = 0;
    for j in 0..=p {
        sum_r += dim_r(p - j, q + j)?;
    }
    r.check_scalar("dim P_(p,q) vs sum of dim R_(p-j,q+j)", &big(&dim_bihomogeneous(2 * n, p, q)), &int(sum_r));
    // R_{p,q} = ⊕_j ‖z‖^{2j} H^S_{p−j,q−j}
    let mut sum_hs = 0;
    for j in 0..=p {
        sum_hs += dim_hs(p - j, q - j)?;
    }
    r.check_scalar("dim R_(p,q) vs sum of dim H^S_(p-j,q-j)", &int(r_here), &int(sum_hs));
    Ok(())
}

// ---------------------------------------------------------------- pizzetti

/// Total degree up to which the lemma is also checked without restriction.
const FULL_LEMMA_DEGREE: u32 = 4;

fn lemma(params: &KernelParams, r: &mut VerificationReport) -> Result<()> {
    let ctx = StiefelContext::for_params(params)?;
    let degree = match *params {
        KernelParams::Real { k, .. } => 2 * k,
        KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. } => p + q,
    };
    let mut modes = vec![Restriction::Slice];
    if degree <= FULL_LEMMA_DEGREE {
        modes.push(Restriction::Full);
    }
    for mode in modes {
        let f = normalized_plane_wave(params, mode)?;
        for op in [IOp::I1, IOp::I2] {
            r.check_eq(&ctx.apply_i(&f, op, 1)?, &apply_i_closed_form(params, op, mode)?);
        }
    }
    r.note("checked on the invariant slice x = x1 e1, y in span(e1, e2)");
    Ok(())
}

fn degree_selection(params: &KernelParams, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Real { k, .. } = *params else { unreachable!() };
    let ctx = StiefelContext::for_params(params)?;
    let f = normalized_plane_wave(params, Restriction::Slice)?;
    let sys = f.system().clone();
    let mut diagonal_nonzero = false;
    let mut g = f;
    for ell in 0..=k {
        let mut h = g.clone();
        for j in 2 * ell..=2 * k {
            let at_origin = h.restrict_zero("s")?.restrict_zero("t")?;
            if j == k {
                diagonal_nonzero |= !at_origin.is_zero();
            } else {
                r.check_eq(&at_origin, &zero(&sys));
            }
            if j < 2 * k {
                h = ctx.apply_i(&h, IOp::I1, 1)?;
            }
        }
        if ell < k {
            g = ctx.apply_i(&g, IOp::I2, 1)?;
        }
    }
    r.check("the j = k terms contribute", diagonal_nonzero);
    Ok(())
}

fn sphere_consistency(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let ctx = StiefelContext::for_params(params)?;
    let sphere = OperatorContext::new(ctx.system(), "t")?;
    for i in 0..REPRODUCTION_SAMPLES {
        let s = sample_seed(seed, i);
        let a = random_poly(s, params, RandomFlavor::Homogeneous)?.rename_group("x", "t")?;
        let b = random_poly(s ^ 1, params, RandomFlavor::Homogeneous)?.rename_group("x", "y")?;
        let f = &a * &b;
        r.check_eq(&ctx.mean(&f), &sphere.sphere_mean(&f));
    }
    Ok(())
}

fn j_matrix(params: &KernelParams, seed: u64, r: &mut VerificationReport) -> Result<()> {
    let KernelParams::Complex { n, p, q } = *params else { unreachable!() };
    let sys = VariableSystem::builder().complex("s", n as usize).complex("t", n as usize).build()?;
    let mut basis = Vec::new();
    for a in 0..=p {
        for b in 0..=q {
            let left = monomial_basis(&sys, "s", DegreeProfile::Bidegree(a, b))?;
            let right = monomial_basis(&sys, "t", DegreeProfile::Bidegree(p - a, q - b))?;
            for x in &left {
                for y in &right {
                    basis.push(x.mul(y));
                }
            }
        }
    }
    for i in 0..REPRODUCTION_SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, i));
        let f = SparsePolynomial::from_terms(
            &sys,
            basis
                .iter()
                .map(|m| (m.clone(), ExactScalar::int(rng.gen_range(-9i64..=9))))
                .collect::<Vec<_>>(),
        );
        let (real_form, complex_form) = i2_real_form_pair(n as usize, &f.to_string())?;
        r.check_eq(&real_form, &complex_form);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids() {
        let g = GridSpec::default();
        assert_eq!(g.real(false).len(), 15);
        assert_eq!(g.complex().len(), 32);
        // n = 1: p ≤ q, p+q ≤ 5 gives 12; n = 2: p ≤ q ≤ 2 gives 6
        assert_eq!(g.symplectic(false).len(), 18);
        assert_eq!(g.symplectic(true).len(), 20);
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        let p = KernelParams::Real { m: 3, k: 2 };
        let a = task_seed(42, Identity::SphericalProjector, &p);
        assert_eq!(a, task_seed(42, Identity::SphericalProjector, &p));
        assert_ne!(a, task_seed(43, Identity::SphericalProjector, &p));
        assert_ne!(a, task_seed(42, Identity::SphericalReproduction, &p));
    }

    #[test]
    fn filters_select_single_points() {
        let g = GridSpec {
            case: Some(Case::Real),
            m: Some(3),
            k: Some(1),
            ..GridSpec::default()
        };
        let t = tasks(Suite::Planewave, &g);
        assert_eq!(t.len(), 1);
        assert!(run_task(&t[0], 0, &Caps::default()).passed());
    }

    #[test]
    fn small_tasks_pass() {
        let g = GridSpec {
            m: Some(3),
            kmax: Some(2),
            n: Some(2),
            pqmax: Some(1),
            ..GridSpec::default()
        };
        for t in tasks(Suite::All, &g) {
            let rep = run_task(&t, 7, &Caps::default());
            assert!(rep.passed(), "{} {}: {:?}", rep.identity_id, rep.params, rep.witness);
        }
    }
}
