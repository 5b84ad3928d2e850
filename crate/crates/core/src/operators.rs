//! Differential operators and inner products on polynomial spaces.
//!
//! Every operator acts on one "active" group of a variable system; symbols of
//! other groups are treated as constants (parameters).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{bilinear, factorial_weight, Accumulator, SparsePolynomial};
use crate::scalar::{rat_int, ExactScalar};
use crate::specfun::pochhammer;
use crate::system::{Group, Kind, Sym, VariableSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerVariant {
    Full,
    Holomorphic,
    Antiholomorphic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianVariant {
    /// `Σ ∂²/∂x_j²`; on a complex group this is `4Δ_z`.
    Real,
    /// `Δ_z = Σ ∂_{z_j} ∂_{z̄_j}`.
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    E,
    Edag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradPair {
    /// `Σ ∂_{a_j} ∂_{b_j}`
    Real,
    /// `Σ ∂_{a_j} ∂_{b̄_j}`
    HoloAnti,
    /// `Σ ∂_{ā_j} ∂_{b_j}`
    AntiHolo,
}

/// Apply the first-order operator `Σ k · a · ∂_d` given as `(a, d, k)` triples.
pub fn vector_field(p: &SparsePolynomial, fields: &[(Sym, Sym, ExactScalar)]) -> SparsePolynomial {
    let mut acc = Accumulator::new(p.system());
    for (m, c) in p.terms() {
        for (a, d, k) in fields {
            if let Some((lm, e)) = m.lower(*d) {
                let coeff = &(c * k) * &ExactScalar::int(e as i64);
                acc.add_term_owned(lm.mul(&Monomial::var(*a)), coeff);
            }
        }
    }
    acc.finish()
}

/// Apply the second-order operator `Σ k · ∂_a ∂_b` given as `(a, b, k)` triples.
pub fn second_order(p: &SparsePolynomial, parts: &[(Sym, Sym, ExactScalar)]) -> SparsePolynomial {
    let mut acc = Accumulator::new(p.system());
    for (m, c) in p.terms() {
        for (a, b, k) in parts {
            let Some((m1, e1)) = m.lower(*a) else { continue };
            let Some((m2, e2)) = m1.lower(*b) else { continue };
            let coeff = &(c * k) * &ExactScalar::int(e1 as i64 * e2 as i64);
            acc.add_term_owned(m2, coeff);
        }
    }
    acc.finish()
}

/// The differentiated group together with its system; for complex groups of
/// even length `2n` the twisted operators pair index `j` with `n + j`.
#[derive(Debug, Clone)]
pub struct OperatorContext {
    system: Arc<VariableSystem>,
    group: Group,
}

impl OperatorContext {
    pub fn new(system: &Arc<VariableSystem>, group: &str) -> Result<Self> {
        Ok(OperatorContext {
            system: system.clone(),
            group: system.group(group)?.clone(),
        })
    }

    pub fn system(&self) -> &Arc<VariableSystem> {
        &self.system
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn is_complex(&self) -> bool {
        self.group.kind == Kind::Complex
    }

    fn require_complex(&self, what: &str) -> Result<()> {
        if self.is_complex() {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                group: self.group.name.clone(),
                message: format!("{what} needs a complex group"),
            })
        }
    }

    pub fn euler(&self, p: &SparsePolynomial, variant: EulerVariant) -> Result<SparsePolynomial> {
        if variant != EulerVariant::Full {
            self.require_complex("a holomorphic/antiholomorphic Euler operator")?;
        }
        let sys = &self.system;
        let g = &self.group;
        let count = |s: Sym| {
            g.contains(s)
                && match variant {
                    EulerVariant::Full => true,
                    EulerVariant::Holomorphic => !sys.info(s).bar,
                    EulerVariant::Antiholomorphic => sys.info(s).bar,
                }
        };
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), c * &ExactScalar::int(m.degree_in(count) as i64)));
        Ok(SparsePolynomial::from_terms(sys, terms))
    }

    pub fn laplacian(&self, p: &SparsePolynomial, variant: LaplacianVariant) -> Result<SparsePolynomial> {
        match (variant, self.group.kind) {
            (LaplacianVariant::Real, Kind::Real) => Ok(self.delta(p)),
            (LaplacianVariant::Real, Kind::Complex) => Ok(self.delta(p).scale(&ExactScalar::int(4))),
            (LaplacianVariant::Complex, Kind::Complex) => Ok(self.delta(p)),
            (LaplacianVariant::Complex, Kind::Real) => self.require_complex("Δ_z").map(|_| unreachable!()),
        }
    }

    /// The group's natural Laplacian: `Δ` on a real group, `Δ_z` on a complex one.
    pub fn delta(&self, p: &SparsePolynomial) -> SparsePolynomial {
        let g = &self.group;
        let parts: Vec<_> = (0..g.len)
            .map(|j| match g.kind {
                Kind::Real => (g.sym(j), g.sym(j), ExactScalar::one()),
                Kind::Complex => (g.sym(j), g.bar(j), ExactScalar::one()),
            })
            .collect();
        second_order(p, &parts)
    }

    pub fn delta_pow(&self, p: &SparsePolynomial, j: u32) -> SparsePolynomial {
        (0..j).fold(p.clone(), |acc, _| self.delta(&acc))
    }

    /// `‖x‖²` or `‖z‖² = Σ z_j z̄_j`.
    pub fn normsq(&self) -> SparsePolynomial {
        let g = &self.group;
        match g.kind {
            Kind::Real => bilinear(&self.system, (0..g.len).map(|j| (g.sym(j), g.sym(j))), |_| ExactScalar::one()),
            Kind::Complex => bilinear(&self.system, (0..g.len).map(|j| (g.sym(j), g.bar(j))), |_| ExactScalar::one()),
        }
    }

    fn half(&self) -> Result<usize> {
        self.require_complex("a twisted Euler operator")?;
        if self.group.len % 2 == 1 {
            return Err(Error::OddLength {
                group: self.group.name.clone(),
                len: self.group.len,
            });
        }
        Ok(self.group.len / 2)
    }

    pub fn twist(&self, p: &SparsePolynomial, variant: Twist) -> Result<SparsePolynomial> {
        let n = self.half()?;
        let g = &self.group;
        let one = ExactScalar::one();
        let minus = ExactScalar::int(-1);
        let mut fields = Vec::with_capacity(2 * n);
        for j in 0..n {
            match variant {
                // E = Σ z_j ∂̄_{z_{n+j}} − z_{n+j} ∂̄_{z_j}
                Twist::E => {
                    fields.push((g.sym(j), g.bar(n + j), one.clone()));
                    fields.push((g.sym(n + j), g.bar(j), minus.clone()));
                }
                // E† = −Σ z̄_j ∂_{z_{n+j}} − z̄_{n+j} ∂_{z_j}
                Twist::Edag => {
                    fields.push((g.bar(j), g.sym(n + j), minus.clone()));
                    fields.push((g.bar(n + j), g.sym(j), one.clone()));
                }
            }
        }
        Ok(vector_field(p, &fields))
    }

    pub fn twist_pow(&self, p: &SparsePolynomial, variant: Twist, times: u32) -> Result<SparsePolynomial> {
        let mut acc = p.clone();
        for _ in 0..times {
            if acc.is_zero() {
                break;
            }
            acc = self.twist(&acc, variant)?;
        }
        Ok(acc)
    }

    /// Check that `p` uses only this group's symbols.
    pub fn require_pure(&self, p: &SparsePolynomial) -> Result<()> {
        if p.uses_only(&[&self.group]) {
            Ok(())
        } else {
            Err(Error::ForeignSymbols(self.group.name.clone()))
        }
    }

    /// Fischer pairing `[conj(P)(∂) Q]` at the active group's origin, as a
    /// polynomial in the remaining groups. On a real group `x_j ↦ ∂_{x_j}`;
    /// on a complex group `z_j ↦ ∂̄_{z_j}` and `z̄_j ↦ ∂_{z_j}`. Both reduce to
    /// the factorial closed form over shared monomials.
    pub fn fischer_pairing(&self, p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
        let g = self.group.clone();
        let in_g = move |s: Sym| g.contains(s);
        // conj(P)(∂) maps the conjugated key back onto the key of P itself
        let sp = p.split_by(&in_g);
        let cq: rustc_hash::FxHashMap<Monomial, SparsePolynomial> = q.split_by(&in_g).into_iter().collect();
        let mut acc = Accumulator::new(&self.system);
        for (key, pa) in &sp {
            let Some(qa) = cq.get(key) else { continue };
            let w = ExactScalar::real(BigRational::from_integer(factorial_weight(key, &in_g)));
            acc.add_scaled(&(&pa.conjugate() * qa), &w);
        }
        acc.finish()
    }

    /// Fischer inner product on a real group; both inputs must be free of other symbols.
    pub fn fischer_real(&self, p: &SparsePolynomial, q: &SparsePolynomial) -> Result<ExactScalar> {
        if self.group.kind != Kind::Real {
            return Err(Error::KindMismatch {
                group: self.group.name.clone(),
                message: "the real Fischer product needs a real group".into(),
            });
        }
        self.require_pure(p)?;
        self.require_pure(q)?;
        Ok(self.fischer_pairing(p, q).constant_term())
    }

    /// Complex Fischer inner product; both inputs must be free of other symbols.
    pub fn fischer_complex(&self, p: &SparsePolynomial, q: &SparsePolynomial) -> Result<ExactScalar> {
        self.require_complex("the complex Fischer product")?;
        self.require_pure(p)?;
        self.require_pure(q)?;
        Ok(self.fischer_pairing(p, q).constant_term())
    }

    /// Fischer product by literally applying `conj(P)(∂)` to `Q` and setting
    /// the group to zero. Slow; kept as the definition.
    pub fn fischer_by_differentiation(&self, p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
        let sys = &self.system;
        let g = &self.group;
        let mut acc = Accumulator::new(sys);
        for (m, c) in p.conjugate().terms() {
            let (gm, rest) = m.split(|s| g.contains(s));
            let mut d = q.clone();
            for (s, e) in gm.iter() {
                let target = match g.kind {
                    Kind::Real => s,
                    Kind::Complex => sys.conj_sym(s),
                };
                for _ in 0..e {
                    d = d.partial(target);
                }
            }
            let d = d.restrict_zero_group(g);
            acc.add_product(&d, &rest, c);
        }
        acc.finish()
    }

    /// Normalized sphere mean by the Pizzetti series
    /// `Σ_j Δ^j P / (4^j j! (m/2)_j)` at the origin (real dimension `m`).
    pub fn sphere_mean(&self, p: &SparsePolynomial) -> SparsePolynomial {
        let g = &self.group;
        let degree = p
            .terms()
            .iter()
            .map(|(m, _)| m.degree_in(|s| g.contains(s)))
            .max()
            .unwrap_or(0);
        let mut acc = Accumulator::new(&self.system);
        let mut cur = p.clone();
        for j in 0..=degree / 2 {
            if j > 0 {
                cur = self.delta(&cur);
            }
            if cur.is_zero() {
                break;
            }
            // Δ = 4Δ_z on complex groups, so the complex series is Σ Δ_z^j / (j! (N)_j)
            let coeff = match g.kind {
                Kind::Real => {
                    let four_j = rat_int(4).pow(j as i32);
                    let half_m = BigRational::new(BigInt::from(g.len), BigInt::from(2));
                    (four_j * crate::specfun::factorial_q(j) * pochhammer(&half_m, j)).recip()
                }
                Kind::Complex => {
                    (crate::specfun::factorial_q(j) * pochhammer(&rat_int(g.len as i64), j)).recip()
                }
            };
            acc.add_scaled(&cur.restrict_zero_group(g), &ExactScalar::real(coeff));
        }
        acc.finish()
    }

    /// Sphere moment of one monomial in the group's symbols.
    ///
    /// Real: `mean(x^{2a}) = ∏ (1/2)_{a_i} / (m/2)_{|a|}`, odd exponents give 0.
    /// Complex: `mean(z^α z̄^β) = δ_{αβ} α! / (N)_{|α|}`.
    pub fn sphere_moment(&self, m: &Monomial) -> BigRational {
        let g = &self.group;
        match g.kind {
            Kind::Real => {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let mut num = BigRational::one();
                let mut total = 0u32;
                for (_, e) in m.iter() {
                    if e % 2 == 1 {
                        return BigRational::zero();
                    }
                    num *= pochhammer(&half, (e / 2) as u32);
                    total += (e / 2) as u32;
                }
                let half_m = BigRational::new(BigInt::from(g.len), BigInt::from(2));
                num / pochhammer(&half_m, total)
            }
            Kind::Complex => {
                let mut total = 0u32;
                for j in 0..g.len {
                    let a = m.exponent(g.sym(j));
                    if a != m.exponent(g.bar(j)) {
                        return BigRational::zero();
                    }
                    total += a as u32;
                }
                let w = BigRational::from_integer(factorial_weight(m, |s| !self.system.info(s).bar));
                w / pochhammer(&rat_int(g.len as i64), total)
            }
        }
    }

    /// Sphere mean by closed-form moments; agrees with [`Self::sphere_mean`].
    pub fn sphere_mean_moments(&self, p: &SparsePolynomial) -> SparsePolynomial {
        let g = self.group.clone();
        let mut acc = Accumulator::new(&self.system);
        for (m, c) in p.terms() {
            let (gm, rest) = m.split(|s| g.contains(s));
            let w = self.sphere_moment(&gm);
            if !w.is_zero() {
                acc.add_term_owned(rest, c.scale(&w));
            }
        }
        acc.finish()
    }

    /// Spherical inner product `mean(conj(P) · Q)` over the active group,
    /// contracted pairwise so the product is never expanded.
    pub fn spherical_inner(&self, p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
        let g = self.group.clone();
        let in_g = |s: Sym| g.contains(s);
        let cp = p.conjugate().split_by(in_g);
        let cq = q.split_by(in_g);
        let mut acc = Accumulator::new(&self.system);
        let mut pairs: rustc_hash::FxHashMap<(usize, usize), BigRational> = rustc_hash::FxHashMap::default();
        for (i, (ka, _)) in cp.iter().enumerate() {
            for (j, (kb, _)) in cq.iter().enumerate() {
                let w = self.sphere_moment(&ka.mul(kb));
                if !w.is_zero() {
                    pairs.insert((i, j), w);
                }
            }
        }
        let mut keys: Vec<_> = pairs.into_iter().collect();
        keys.sort_unstable_by_key(|e| e.0);
        for ((i, j), w) in keys {
            acc.add_scaled(&(&cp[i].1 * &cq[j].1), &ExactScalar::real(w));
        }
        acc.finish()
    }
}

/// `Σ_j ∂_{a_j} ∂_{b_j}` with the variant's bar placement, applied once.
pub fn grad_pair(p: &SparsePolynomial, a: &str, b: &str, variant: GradPair) -> Result<SparsePolynomial> {
    let sys = p.system();
    let ga = sys.group(a)?;
    let gb = sys.group(b)?;
    if ga.len != gb.len {
        return Err(Error::LengthMismatch(a.into(), b.into()));
    }
    let needs_complex = |g: &Group| -> Result<()> {
        if g.kind == Kind::Complex {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                group: g.name.clone(),
                message: "conjugate gradients need a complex group".into(),
            })
        }
    };
    let parts: Vec<_> = match variant {
        GradPair::Real => (0..ga.len).map(|j| (ga.sym(j), gb.sym(j), ExactScalar::one())).collect(),
        GradPair::HoloAnti => {
            needs_complex(gb)?;
            (0..ga.len).map(|j| (ga.sym(j), gb.bar(j), ExactScalar::one())).collect()
        }
        GradPair::AntiHolo => {
            needs_complex(ga)?;
            (0..ga.len).map(|j| (ga.bar(j), gb.sym(j), ExactScalar::one())).collect()
        }
    };
    Ok(second_order(p, &parts))
}

/// `⟨a,b⟩ = Σ a_j b_j` over two real groups (or the holomorphic symbols of complex ones).
pub fn dot(system: &Arc<VariableSystem>, a: &str, b: &str) -> Result<SparsePolynomial> {
    let ga = system.group(a)?;
    let gb = system.group(b)?;
    if ga.len != gb.len {
        return Err(Error::LengthMismatch(a.into(), b.into()));
    }
    Ok(bilinear(system, (0..ga.len).map(|j| (ga.sym(j), gb.sym(j))), |_| ExactScalar::one()))
}

/// `⟨z,ū⟩ = Σ z_j ū_j` over two complex groups.
pub fn hermitian(system: &Arc<VariableSystem>, z: &str, u: &str) -> Result<SparsePolynomial> {
    let gz = system.group(z)?;
    let gu = system.group(u)?;
    if gz.len != gu.len {
        return Err(Error::LengthMismatch(z.into(), u.into()));
    }
    if gz.kind != Kind::Complex || gu.kind != Kind::Complex {
        return Err(Error::KindMismatch {
            group: format!("{z}/{u}"),
            message: "hermitian product needs complex groups".into(),
        });
    }
    Ok(bilinear(system, (0..gz.len).map(|j| (gz.sym(j), gu.bar(j))), |_| ExactScalar::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn sys() -> Arc<VariableSystem> {
        VariableSystem::builder().real("x", 2).complex("z", 2).complex("u", 2).build().unwrap()
    }

    fn p(s: &str) -> SparsePolynomial {
        parse_poly(&sys(), s).unwrap()
    }

    #[test]
    fn euler_eigenvalues() {
        let s = sys();
        let x = OperatorContext::new(&s, "x").unwrap();
        let z = OperatorContext::new(&s, "z").unwrap();
        assert_eq!(x.euler(&p("x[1]^2*x[2]"), EulerVariant::Full).unwrap(), p("3*x[1]^2*x[2]"));
        assert_eq!(z.euler(&p("z[1]^2*zbar[2]"), EulerVariant::Holomorphic).unwrap(), p("2*z[1]^2*zbar[2]"));
        assert_eq!(z.euler(&p("z[1]^2*zbar[2]"), EulerVariant::Antiholomorphic).unwrap(), p("z[1]^2*zbar[2]"));
        assert!(x.euler(&p("x[1]"), EulerVariant::Holomorphic).is_err());
    }

    #[test]
    fn laplacians() {
        let s = sys();
        let x = OperatorContext::new(&s, "x").unwrap();
        let z = OperatorContext::new(&s, "z").unwrap();
        assert_eq!(x.laplacian(&p("x[1]^2+x[2]^2"), LaplacianVariant::Real).unwrap(), p("4"));
        assert_eq!(z.laplacian(&p("z[1]*zbar[1]"), LaplacianVariant::Complex).unwrap(), p("1"));
        assert_eq!(z.laplacian(&p("z[1]*zbar[1]"), LaplacianVariant::Real).unwrap(), p("4"));
        assert!(matches!(
            x.laplacian(&p("x[1]"), LaplacianVariant::Complex),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn twist_actions_for_n_one() {
        let s = sys();
        let z = OperatorContext::new(&s, "z").unwrap();
        let abar = p("zbar[1]*u[1]+zbar[2]*u[2]");
        let c = p("z[1]*u[2]-z[2]*u[1]");
        let a = p("z[1]*ubar[1]+z[2]*ubar[2]");
        assert_eq!(z.twist(&abar, Twist::E).unwrap(), c);
        assert_eq!(z.twist(&c, Twist::Edag).unwrap(), abar);
        assert!(z.twist(&a, Twist::E).unwrap().is_zero());
        let odd = VariableSystem::builder().complex("w", 3).build().unwrap();
        let w = OperatorContext::new(&odd, "w").unwrap();
        assert!(matches!(
            w.twist(&SparsePolynomial::one(&odd), Twist::E),
            Err(Error::OddLength { len: 3, .. })
        ));
    }

    #[test]
    fn gradient_pairs() {
        let s = VariableSystem::builder().real("s", 2).real("t", 2).complex("a", 2).complex("b", 2).build().unwrap();
        let q = |t: &str| parse_poly(&s, t).unwrap();
        assert_eq!(grad_pair(&q("s[1]*t[1]"), "s", "t", GradPair::Real).unwrap(), q("1"));
        assert!(grad_pair(&q("s[1]*t[2]"), "s", "t", GradPair::Real).unwrap().is_zero());
        assert_eq!(grad_pair(&q("a[1]*bbar[1]+a[2]*bbar[1]"), "a", "b", GradPair::HoloAnti).unwrap(), q("1"));
    }

    #[test]
    fn fischer_examples() {
        let s = VariableSystem::builder().real("x", 2).complex("z", 2).build().unwrap();
        let q = |t: &str| parse_poly(&s, t).unwrap();
        let x = OperatorContext::new(&s, "x").unwrap();
        let z = OperatorContext::new(&s, "z").unwrap();
        assert_eq!(x.fischer_real(&q("x[1]^2"), &q("x[1]^2")).unwrap(), ExactScalar::int(2));
        assert_eq!(x.fischer_real(&q("x[1]*x[2]"), &q("x[1]*x[2]")).unwrap(), ExactScalar::int(1));
        let lhs = x.fischer_real(&x.normsq(), &q("x[1]^2+x[2]^2")).unwrap();
        let rhs = x.fischer_real(&q("1"), &x.delta(&q("x[1]^2+x[2]^2"))).unwrap();
        assert_eq!(lhs, ExactScalar::int(4));
        assert_eq!(rhs, ExactScalar::int(4));
        assert_eq!(z.fischer_complex(&q("z[1]"), &q("z[1]")).unwrap(), ExactScalar::int(1));
        assert_eq!(z.fischer_complex(&q("z[1]^2"), &q("z[1]^2")).unwrap(), ExactScalar::int(2));
        assert_eq!(z.fischer_complex(&q("z[1]*zbar[2]"), &q("z[1]*zbar[2]")).unwrap(), ExactScalar::int(1));
        assert!(matches!(x.fischer_real(&q("x[1]*z[1]"), &q("x[1]")), Err(Error::ForeignSymbols(_))));
    }

    #[test]
    fn sphere_means() {
        let s = VariableSystem::builder().real("x", 3).build().unwrap();
        let q = |t: &str| parse_poly(&s, t).unwrap();
        let x = OperatorContext::new(&s, "x").unwrap();
        assert_eq!(x.sphere_mean(&q("1")), q("1"));
        assert_eq!(x.sphere_mean(&q("x[1]^2")), q("1/3"));
        assert_eq!(x.sphere_mean(&q("x[1]^4")), q("1/5"));
        assert_eq!(x.sphere_mean_moments(&q("x[1]^4")), q("1/5"));
        assert_eq!(x.spherical_inner(&q("x[1]"), &q("x[1]")), q("1/3"));
        assert!(x.spherical_inner(&q("x[1]"), &q("x[2]")).is_zero());
    }
}
