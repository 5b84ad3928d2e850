//! Normalized means over the Stiefel manifolds of orthonormal real pairs
//! (`St1`) and unitary pairs (`St2`), computed exactly with Pizzetti series;
//! plane waves and the plane-wave representations of the reproducing kernels.
//!
//! Two evaluation paths exist. The operator path applies `I₁`, `I₂` to the
//! integrand and evaluates at `s = t = 0`. The symbol path uses that a
//! constant-coefficient operator `D(∂)` satisfies `[D(∂) w^γ]₀ = γ!·D_γ`,
//! where `D_γ` is extracted combinatorially from `(S+T)^a (ST − XY)^ℓ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::harmonics::{
    kernel_with, proj_symplectic, standard_system, symplectic_b, KernelKind, Orientation, SympOrientation,
};
use crate::monomial::Monomial;
use crate::operators::{dot, grad_pair, hermitian, GradPair, OperatorContext};
use crate::params::KernelParams;
use crate::poly::{factorial_weight, Accumulator, SparsePolynomial};
use crate::report::{Caps, Status, VerificationReport};
use crate::scalar::{rat, rat_int, ExactScalar};
use crate::specfun::{binomial, dim_complex, dim_spherical, factorial, factorial_q, lambda_complex, lambda_real, pochhammer};
use crate::system::{Group, Kind, Sym, VariableSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Manifold {
    /// Orthonormal pairs in ℝ^m.
    St1,
    /// Unitary pairs in ℂ^N.
    St2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IOp {
    I1,
    I2,
}

/// Integration over `(s, t)` on a Stiefel manifold; every other group is a parameter.
#[derive(Debug, Clone)]
pub struct StiefelContext {
    system: Arc<VariableSystem>,
    manifold: Manifold,
    s: Group,
    t: Group,
}

impl StiefelContext {
    pub fn new(system: &Arc<VariableSystem>, manifold: Manifold, s: &str, t: &str) -> Result<Self> {
        let gs = system.group(s)?.clone();
        let gt = system.group(t)?.clone();
        if gs.len != gt.len {
            return Err(Error::LengthMismatch(s.into(), t.into()));
        }
        let want = match manifold {
            Manifold::St1 => Kind::Real,
            Manifold::St2 => Kind::Complex,
        };
        for g in [&gs, &gt] {
            if g.kind != want {
                return Err(Error::KindMismatch {
                    group: g.name.clone(),
                    message: format!("{manifold:?} integrates over {want:?} groups"),
                });
            }
        }
        if gs.len < 2 {
            return Err(Error::InvalidParams(format!(
                "Stiefel pairs need dimension >= 2, got {}",
                gs.len
            )));
        }
        Ok(StiefelContext {
            system: system.clone(),
            manifold,
            s: gs,
            t: gt,
        })
    }

    /// The context matching the standard system of `params`.
    pub fn for_params(params: &KernelParams) -> Result<Self> {
        let sys = standard_system(params)?;
        let manifold = match params {
            KernelParams::Real { .. } => Manifold::St1,
            _ => Manifold::St2,
        };
        StiefelContext::new(&sys, manifold, "s", "t")
    }

    pub fn system(&self) -> &Arc<VariableSystem> {
        &self.system
    }

    pub fn manifold(&self) -> Manifold {
        self.manifold
    }

    pub fn dim(&self) -> usize {
        self.s.len
    }

    fn is_w(&self, x: Sym) -> bool {
        self.s.contains(x) || self.t.contains(x)
    }

    fn delta(&self, f: &SparsePolynomial, g: &Group) -> SparsePolynomial {
        let parts: Vec<_> = match g.kind {
            Kind::Real => (0..g.len).map(|j| (g.sym(j), g.sym(j), ExactScalar::one())).collect(),
            Kind::Complex => (0..g.len).map(|j| (g.sym(j), g.bar(j), ExactScalar::one())).collect(),
        };
        crate::operators::second_order(f, &parts)
    }

    fn i1(&self, f: &SparsePolynomial) -> SparsePolynomial {
        let sum = &self.delta(f, &self.s) + &self.delta(f, &self.t);
        match self.manifold {
            Manifold::St1 => sum,
            Manifold::St2 => sum.scale(&ExactScalar::int(4)),
        }
    }

    fn i2(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let (s, t) = (self.s.name.as_str(), self.t.name.as_str());
        let lap = self.delta(&self.delta(f, &self.t), &self.s);
        match self.manifold {
            Manifold::St1 => {
                let g = grad_pair(&grad_pair(f, s, t, GradPair::Real)?, s, t, GradPair::Real)?;
                Ok(&lap - &g)
            }
            Manifold::St2 => {
                let g = grad_pair(&grad_pair(f, s, t, GradPair::HoloAnti)?, s, t, GradPair::AntiHolo)?;
                Ok((&lap - &g).scale(&ExactScalar::int(16)))
            }
        }
    }

    /// `I^times f` by explicit differentiation.
    pub fn apply_i(&self, f: &SparsePolynomial, which: IOp, times: u32) -> Result<SparsePolynomial> {
        let mut out = f.clone();
        for _ in 0..times {
            if out.is_zero() {
                break;
            }
            out = match which {
                IOp::I1 => self.i1(&out),
                IOp::I2 => self.i2(&out)?,
            };
        }
        Ok(out)
    }

    /// Series coefficient of `I₁^{j−2ℓ} I₂^ℓ`, including `1/((j−2ℓ)! ℓ!)`.
    fn series_coeff(&self, j: u32, ell: u32) -> BigRational {
        let n = self.dim() as i64;
        let tail = factorial_q(j - 2 * ell) * factorial_q(ell);
        match self.manifold {
            Manifold::St1 => {
                let four = rat_int(4).pow(j as i32);
                (four * pochhammer(&rat(n, 2), j) * pochhammer(&rat(n - 1, 2), ell) * tail).recip()
            }
            Manifold::St2 => {
                let four = rat_int(4).pow(j as i32);
                (four * pochhammer(&rat_int(n), j) * pochhammer(&rat_int(n - 1), ell) * tail).recip()
            }
        }
    }

    /// The Pizzetti series evaluated by applying `I₁`, `I₂` to `f`.
    pub fn mean_by_operators(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let mut acc = Accumulator::new(&self.system);
        let mut g = f.clone();
        let mut ell = 0;
        while !g.is_zero() {
            let mut h = g.clone();
            let mut a = 0;
            while !h.is_zero() {
                let at_zero = h.restrict_zero_where(|x| self.is_w(x));
                if !at_zero.is_zero() {
                    let c = self.series_coeff(a + 2 * ell, ell);
                    acc.add_scaled(&at_zero, &ExactScalar::real(c));
                }
                h = self.i1(&h);
                a += 1;
            }
            g = self.i2(&g)?;
            ell += 1;
        }
        Ok(acc.finish())
    }

    /// Exponents of a monomial in `(s, s̄, t, t̄)` (real: `s̄ = t̄ = 0`), by coordinate.
    fn exponents(&self, m: &Monomial) -> [Vec<u32>; 4] {
        let n = self.dim();
        let mut out = [vec![0; n], vec![0; n], vec![0; n], vec![0; n]];
        for j in 0..n {
            out[0][j] = m.exponent(self.s.sym(j)) as u32;
            out[2][j] = m.exponent(self.t.sym(j)) as u32;
            if self.manifold == Manifold::St2 {
                out[1][j] = m.exponent(self.s.bar(j)) as u32;
                out[3][j] = m.exponent(self.t.bar(j)) as u32;
            }
        }
        out
    }

    /// Selection rule of the mean: two monomials can only pair to a nonzero
    /// moment when their charges cancel.
    fn charge(&self, m: &Monomial) -> Vec<i64> {
        let [a, b, c, d] = self.exponents(m);
        match self.manifold {
            Manifold::St1 => {
                let mut v: Vec<i64> = a.iter().zip(&c).map(|(x, y)| ((x + y) % 2) as i64).collect();
                v.push((a.iter().sum::<u32>() % 2) as i64);
                v
            }
            Manifold::St2 => {
                let mut v: Vec<i64> = (0..a.len())
                    .map(|j| a[j] as i64 + c[j] as i64 - b[j] as i64 - d[j] as i64)
                    .collect();
                v.push(a.iter().sum::<u32>() as i64 - b.iter().sum::<u32>() as i64);
                v
            }
        }
    }

    fn charges_cancel(&self, x: &[i64], y: &[i64]) -> bool {
        match self.manifold {
            Manifold::St1 => x == y,
            Manifold::St2 => x.iter().zip(y).all(|(a, b)| a + b == 0),
        }
    }

    /// `mean(w^γ)` for a monomial in the integration symbols only.
    pub fn moment(&self, gamma: &Monomial) -> BigRational {
        let [a, b, c, d] = self.exponents(gamma);
        let total: u32 = a.iter().chain(&b).chain(&c).chain(&d).sum();
        if total % 2 == 1 {
            return BigRational::zero();
        }
        let j = total / 2;
        let sum = match self.manifold {
            Manifold::St1 => self.moment_real(j, &a, &c),
            Manifold::St2 => self.moment_complex(j, &a, &b, &c, &d),
        };
        if sum.is_zero() {
            return sum;
        }
        sum * BigRational::from_integer(factorial_weight(gamma, |x| self.is_w(x)))
    }

    /// Coefficient of `σ^a τ^c` in `Σ_ℓ coeff · (S+T)^{j−2ℓ}(ST−X²)^ℓ`,
    /// `S = Σσ², T = Στ², X = Στσ`.
    fn moment_real(&self, j: u32, a: &[u32], c: &[u32]) -> BigRational {
        let sa: u32 = a.iter().sum();
        let sc: u32 = c.iter().sum();
        if sa % 2 == 1 || a.iter().zip(c).any(|(x, y)| (x + y) % 2 == 1) {
            return BigRational::zero();
        }
        let rmax = sa.min(sc) / 2;
        // W(r): coefficient of σ^a τ^c in S^{e1} T^{e2} X^{2r}
        let w: Vec<BigRational> = (0..=rmax)
            .map(|r| {
                let e1 = (sa - 2 * r) / 2;
                let e2 = (sc - 2 * r) / 2;
                let mut acc = BigRational::zero();
                enumerate_bounded(a.len(), 2 * r, &|i| (0, a[i].min(c[i])), &mut |x| {
                    if (0..a.len()).any(|i| (a[i] - x[i]) % 2 == 1) {
                        return;
                    }
                    let mut den = BigInt::one();
                    for i in 0..a.len() {
                        den *= factorial(x[i]) * factorial((a[i] - x[i]) / 2) * factorial((c[i] - x[i]) / 2);
                    }
                    acc += BigRational::new(BigInt::one(), den);
                });
                acc * BigRational::from_integer(factorial(2 * r) * factorial(e1) * factorial(e2))
            })
            .collect();
        let mut total = BigRational::zero();
        for ell in 0..=j / 2 {
            let deg = j - 2 * ell;
            let mut inner = BigRational::zero();
            for r in 0..=ell.min(rmax) {
                let e1 = ((sa - 2 * r) / 2) as i64;
                let bb = e1 - ell as i64 + r as i64;
                if bb < 0 || bb > deg as i64 || w[r as usize].is_zero() {
                    continue;
                }
                let mut term = BigRational::from_integer(binomial(ell, r) * binomial(deg, bb as u32)) * &w[r as usize];
                if r % 2 == 1 {
                    term = -term;
                }
                inner += term;
            }
            if !inner.is_zero() {
                total += inner * self.series_coeff(j, ell);
            }
        }
        total
    }

    /// Coefficient of `σ^a σ̄^b τ^c τ̄^d` in
    /// `Σ_ℓ coeff · 4^j (S+T)^{j−2ℓ}(ST−XY)^ℓ`, `S = Σσσ̄, T = Σττ̄, X = Σστ̄, Y = Σσ̄τ`.
    fn moment_complex(&self, j: u32, a: &[u32], b: &[u32], c: &[u32], d: &[u32]) -> BigRational {
        let n = a.len();
        if (0..n).any(|i| a[i] + c[i] != b[i] + d[i]) {
            return BigRational::zero();
        }
        let sa: u32 = a.iter().sum();
        let sb: u32 = b.iter().sum();
        let sc: u32 = c.iter().sum();
        if sa != sb {
            return BigRational::zero();
        }
        let rmax = sa.min(sc);
        let w: Vec<BigRational> = (0..=rmax)
            .map(|r| {
                let e1 = sa - r;
                let e2 = sc - r;
                let mut acc = BigRational::zero();
                let bounds = |i: usize| ((a[i] as i64 - b[i] as i64).max(0) as u32, a[i].min(d[i]));
                enumerate_bounded(n, r, &bounds, &mut |x| {
                    let mut den = BigInt::one();
                    for i in 0..n {
                        let s = a[i] - x[i];
                        let y = b[i] - s;
                        let t = c[i] - y;
                        den *= factorial(x[i]) * factorial(y) * factorial(s) * factorial(t);
                    }
                    acc += BigRational::new(BigInt::one(), den);
                });
                acc * BigRational::from_integer(factorial(r) * factorial(r) * factorial(e1) * factorial(e2))
            })
            .collect();
        let four = rat_int(4).pow(j as i32);
        let mut total = BigRational::zero();
        for ell in 0..=j / 2 {
            let deg = j - 2 * ell;
            let mut inner = BigRational::zero();
            for r in 0..=ell.min(rmax) {
                let e1 = (sa - r) as i64;
                let bb = e1 - ell as i64 + r as i64;
                if bb < 0 || bb > deg as i64 || w[r as usize].is_zero() {
                    continue;
                }
                let mut term = BigRational::from_integer(binomial(ell, r) * binomial(deg, bb as u32)) * &w[r as usize];
                if r % 2 == 1 {
                    term = -term;
                }
                inner += term;
            }
            if !inner.is_zero() {
                total += inner * self.series_coeff(j, ell) * &four;
            }
        }
        total
    }

    /// The mean of `f` over the manifold, by the symbol path.
    pub fn mean(&self, f: &SparsePolynomial) -> SparsePolynomial {
        let mut acc = Accumulator::new(&self.system);
        for (key, coeff) in f.split_by(|x| self.is_w(x)) {
            let m = self.moment(&key);
            if !m.is_zero() {
                acc.add_scaled(&coeff, &ExactScalar::real(m));
            }
        }
        acc.finish()
    }

    /// `mean(f·g)` without forming the product: both factors are split by
    /// their integration monomials and contracted pairwise through the moments.
    pub fn mean_product(&self, f: &SparsePolynomial, g: &SparsePolynomial, caps: &Caps) -> Result<SparsePolynomial> {
        let fa = f.split_by(|x| self.is_w(x));
        let gb = g.split_by(|x| self.is_w(x));
        let mut by_charge: FxHashMap<Vec<i64>, Vec<usize>> = FxHashMap::default();
        for (i, (key, _)) in gb.iter().enumerate() {
            by_charge.entry(self.charge(key)).or_default().push(i);
        }
        let mut pairs = 0usize;
        let gcharges: Vec<(Vec<i64>, &Vec<usize>)> = by_charge.iter().map(|(k, v)| (k.clone(), v)).collect();
        let matching: Vec<Vec<usize>> = fa
            .iter()
            .map(|(key, _)| {
                let ch = self.charge(key);
                let mut idx: Vec<usize> = gcharges
                    .iter()
                    .filter(|(gc, _)| self.charges_cancel(&ch, gc))
                    .flat_map(|(_, v)| v.iter().copied())
                    .collect();
                idx.sort_unstable();
                pairs += idx.len();
                idx
            })
            .collect();
        caps.guard(pairs)?;
        let mut memo: FxHashMap<Monomial, BigRational> = FxHashMap::default();
        let mut out = Accumulator::new(&self.system);
        for ((alpha, fcoef), idx) in fa.iter().zip(&matching) {
            let mut inner = Accumulator::new(&self.system);
            for &i in idx {
                let (beta, gcoef) = &gb[i];
                let gamma = alpha.mul(beta);
                let m = memo.entry(gamma).or_insert_with_key(|k| self.moment(k));
                if !m.is_zero() {
                    inner.add_scaled(gcoef, &ExactScalar::real(m.clone()));
                }
            }
            let inner = inner.finish();
            if !inner.is_zero() {
                out.add_poly(&(fcoef * &inner));
            }
        }
        let result = out.finish();
        caps.guard_poly(&result)?;
        Ok(result)
    }
}

/// Visit every vector `x` of length `n` with `lo_i ≤ x_i ≤ hi_i` and `Σ x = total`.
fn enumerate_bounded(n: usize, total: u32, bounds: &dyn Fn(usize) -> (u32, u32), visit: &mut dyn FnMut(&[u32])) {
    fn rec(
        i: usize,
        n: usize,
        left: u32,
        bounds: &dyn Fn(usize) -> (u32, u32),
        cur: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i == n {
            if left == 0 {
                visit(cur);
            }
            return;
        }
        let (lo, hi) = bounds(i);
        if lo > hi {
            return;
        }
        let rest_max: u32 = (i + 1..n).map(|k| bounds(k).1).sum();
        let rest_min: u32 = (i + 1..n).map(|k| bounds(k).0).sum();
        for x in lo..=hi.min(left) {
            let rem = left - x;
            if rem > rest_max || rem < rest_min {
                continue;
            }
            cur.push(x);
            rec(i + 1, n, rem, bounds, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, total, bounds, &mut Vec::with_capacity(n), visit);
}

/// A plane-wave integrand, kept as the two factors `left · right` so that
/// means can be contracted without expanding the product.
#[derive(Debug, Clone)]
pub struct PlaneWave {
    pub params: KernelParams,
    pub left: SparsePolynomial,
    pub right: SparsePolynomial,
}

impl PlaneWave {
    pub fn poly(&self) -> SparsePolynomial {
        &self.left * &self.right
    }
}

/// Which construction of the symplectic plane wave to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymplecticWave {
    /// `Proj^{p,q}_{E†}(⟨z,\overline{t+s}⟩^p ⟨z̄,t−s⟩^q)`.
    Projected,
    /// The closed form
    /// `b ⟨z̄,t+s⟩^{q−p}(⟨z,t̄−s̄⟩⟨z̄,t+s⟩ + ⟨z,t+s⟩_s⟨z̄,t̄−s̄⟩_s)^p`, `b = (q−p+1)/(p!(q+1)!)`.
    Printed,
}

/// Coordinate vector `Σ sign·(group)_j` with holomorphic or conjugate symbols.
fn coords(sys: &Arc<VariableSystem>, parts: &[(&str, bool, i64)]) -> Result<Vec<SparsePolynomial>> {
    let len = sys.group(parts[0].0)?.len;
    let mut out = Vec::with_capacity(len);
    for j in 0..len {
        let mut terms = Vec::new();
        for &(name, bar, sign) in parts {
            let g = sys.group(name)?;
            let s = if bar { g.bar(j) } else { g.sym(j) };
            terms.push((Monomial::var(s), ExactScalar::int(sign)));
        }
        out.push(SparsePolynomial::from_terms(sys, terms));
    }
    Ok(out)
}

fn pairing(sys: &Arc<VariableSystem>, a: &[SparsePolynomial], b: &[SparsePolynomial]) -> SparsePolynomial {
    let mut acc = Accumulator::new(sys);
    for (x, y) in a.iter().zip(b) {
        acc.add_poly(&(x * y));
    }
    acc.finish()
}

/// `⟨a,b⟩_s = Σ_ℓ a_ℓ b_{n+ℓ} − a_{n+ℓ} b_ℓ`.
fn skew(sys: &Arc<VariableSystem>, a: &[SparsePolynomial], b: &[SparsePolynomial]) -> SparsePolynomial {
    let n = a.len() / 2;
    let mut acc = Accumulator::new(sys);
    for l in 0..n {
        acc.add_poly(&(&a[l] * &b[n + l]));
        acc.add_scaled(&(&a[n + l] * &b[l]), &ExactScalar::int(-1));
    }
    acc.finish()
}

/// `⟨v,\overline{t+s}⟩^p ⟨v̄,t−s⟩^q` for the complex group `v`.
fn complex_wave_half(sys: &Arc<VariableSystem>, v: &str, p: u32, q: u32) -> Result<SparsePolynomial> {
    let hv = coords(sys, &[(v, false, 1)])?;
    let av = coords(sys, &[(v, true, 1)])?;
    let tps_bar = coords(sys, &[("t", true, 1), ("s", true, 1)])?;
    let tms = coords(sys, &[("t", false, 1), ("s", false, -1)])?;
    Ok(&pairing(sys, &hv, &tps_bar).power(p) * &pairing(sys, &av, &tms).power(q))
}

fn printed_symplectic_half(sys: &Arc<VariableSystem>, v: &str, p: u32, q: u32) -> Result<SparsePolynomial> {
    let hv = coords(sys, &[(v, false, 1)])?;
    let av = coords(sys, &[(v, true, 1)])?;
    let tps = coords(sys, &[("t", false, 1), ("s", false, 1)])?;
    let tms_bar = coords(sys, &[("t", true, 1), ("s", true, -1)])?;
    let lead = pairing(sys, &av, &tps);
    let q_form = &(&pairing(sys, &hv, &tms_bar) * &lead) + &(&skew(sys, &hv, &tps) * &skew(sys, &av, &tms_bar));
    let body = &lead.power(q - p) * &q_form.power(p);
    Ok(body.scale(&ExactScalar::real(symplectic_b(p, q))))
}

pub fn plane_wave(params: &KernelParams) -> Result<PlaneWave> {
    symplectic_plane_wave(params, SymplecticWave::Projected)
}

/// Plane-wave integrand for `params`; `form` only matters in the symplectic case.
pub fn symplectic_plane_wave(params: &KernelParams, form: SymplecticWave) -> Result<PlaneWave> {
    let sys = standard_system(params)?;
    let (left, right) = match *params {
        KernelParams::Real { k, .. } => {
            let i = ExactScalar::i();
            let half = |v: &str, sign: i64| -> Result<SparsePolynomial> {
                let t = dot(&sys, v, "t")?;
                let s = dot(&sys, v, "s")?;
                Ok((&t + &s.scale(&(&i * &ExactScalar::int(sign)))).power(k))
            };
            (half("x", 1)?, half("y", -1)?)
        }
        KernelParams::Complex { p, q, .. } => {
            let fz = complex_wave_half(&sys, "z", p, q)?;
            let fu = complex_wave_half(&sys, "u", p, q)?;
            (fz, fu.conjugate())
        }
        KernelParams::Symplectic { p, q, .. } => match form {
            SymplecticWave::Projected => {
                let gz = proj_symplectic(&OperatorContext::new(&sys, "z")?, &complex_wave_half(&sys, "z", p, q)?, SympOrientation::Edag)?;
                let gu = proj_symplectic(&OperatorContext::new(&sys, "u")?, &complex_wave_half(&sys, "u", p, q)?, SympOrientation::Edag)?;
                (gz, gu.conjugate())
            }
            SymplecticWave::Printed => {
                let gz = printed_symplectic_half(&sys, "z", p, q)?;
                let gu = printed_symplectic_half(&sys, "u", p, q)?;
                (gz, gu.conjugate())
            }
        },
    };
    Ok(PlaneWave {
        params: *params,
        left,
        right,
    })
}

/// `f(−s, t)`.
pub fn negate_group(f: &SparsePolynomial, group: &str) -> Result<SparsePolynomial> {
    let g = f.system().group(group)?.clone();
    let terms = f.terms().iter().map(|(m, c)| {
        let deg = m.degree_in(|x| g.contains(x));
        (m.clone(), if deg % 2 == 1 { -c.clone() } else { c.clone() })
    });
    Ok(SparsePolynomial::from_terms(f.system(), terms.collect::<Vec<_>>()))
}

/// Where an identity between rotation-invariant polynomials is evaluated.
///
/// Both sides of the action lemmas are invariant under the simultaneous
/// action of `O(m)` (real) or `U(n)` (complex) on all four groups, and `I₁`,
/// `I₂` only differentiate in `s, t`. Every parameter pair can be rotated to
/// `x = x₁e₁`, `y ∈ span(e₁, e₂)`, so an invariant polynomial vanishes iff its
/// restriction to that slice does; the check on the slice is still exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    Full,
    Slice,
}

impl Restriction {
    /// Ring homomorphism onto the slice (identity for `Full`).
    pub fn apply(self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        if self == Restriction::Full {
            return Ok(f.clone());
        }
        let sys = f.system();
        let (a, b) = match sys.group("x") {
            Ok(_) => ("x", "y"),
            Err(_) => ("z", "u"),
        };
        let ga = sys.group(a)?.clone();
        let gb = sys.group(b)?.clone();
        let index = |g: &Group, x: Sym| {
            (0..g.len).find(|&j| g.sym(j) == x || (g.kind == Kind::Complex && g.bar(j) == x))
        };
        Ok(f.restrict_zero_where(|x| {
            index(&ga, x).is_some_and(|j| j >= 1) || index(&gb, x).is_some_and(|j| j >= 2)
        }))
    }
}

/// The plane wave divided by `(k!)²` (real) or `(p!q!)²` (complex), the
/// normalization the action lemmas are stated for, optionally restricted
/// factor by factor.
pub fn normalized_plane_wave(params: &KernelParams, restriction: Restriction) -> Result<SparsePolynomial> {
    let norm = match *params {
        KernelParams::Real { k, .. } => factorial_q(k).pow(2),
        KernelParams::Complex { p, q, .. } | KernelParams::Symplectic { p, q, .. } => {
            (factorial_q(p) * factorial_q(q)).pow(2)
        }
    };
    let wave = plane_wave(params)?;
    let f = &restriction.apply(&wave.left)? * &restriction.apply(&wave.right)?;
    Ok(f.scale(&ExactScalar::real(norm.recip())))
}

/// Right-hand sides of the action lemmas for `I₁`, `I₂` on the normalized plane waves:
/// real `I₁ f_k = 4⟨x,y⟩ f_{k−1}`, `I₂ f_k = 4(⟨x,y⟩² − ‖x‖²‖y‖²) f_{k−2}`;
/// complex `I₁ f_{p,q} = 8(⟨z,ū⟩ f_{p−1,q} + ⟨z̄,u⟩ f_{p,q−1})`,
/// `I₂ f_{p,q} = 64(|⟨z,ū⟩|² − ‖z‖²‖u‖²) f_{p−1,q−1}`.
pub fn apply_i_closed_form(params: &KernelParams, which: IOp, restriction: Restriction) -> Result<SparsePolynomial> {
    let sys = standard_system(params)?;
    let wave = |pp: KernelParams| normalized_plane_wave(&pp, restriction);
    let r = |f: SparsePolynomial| restriction.apply(&f);
    match *params {
        KernelParams::Real { m, k } => {
            let xy = r(dot(&sys, "x", "y")?)?;
            match which {
                IOp::I1 if k >= 1 => Ok((&xy * &wave(KernelParams::Real { m, k: k - 1 })?).scale(&ExactScalar::int(4))),
                IOp::I2 if k >= 2 => {
                    let nx = OperatorContext::new(&sys, "x")?.normsq();
                    let ny = OperatorContext::new(&sys, "y")?.normsq();
                    let g = r(&xy.power(2) - &(&nx * &ny))?;
                    Ok((&g * &wave(KernelParams::Real { m, k: k - 2 })?).scale(&ExactScalar::int(4)))
                }
                _ => Ok(SparsePolynomial::zero(&sys)),
            }
        }
        KernelParams::Complex { n, p, q } => {
            let a = r(hermitian(&sys, "z", "u")?)?;
            let a_bar = a.conjugate();
            match which {
                IOp::I1 => {
                    let mut acc = Accumulator::new(&sys);
                    if p >= 1 {
                        acc.add_poly(&(&a * &wave(KernelParams::Complex { n, p: p - 1, q })?));
                    }
                    if q >= 1 {
                        acc.add_poly(&(&a_bar * &wave(KernelParams::Complex { n, p, q: q - 1 })?));
                    }
                    Ok(acc.finish().scale(&ExactScalar::int(8)))
                }
                IOp::I2 if p >= 1 && q >= 1 => {
                    let nz = OperatorContext::new(&sys, "z")?.normsq();
                    let nu = OperatorContext::new(&sys, "u")?.normsq();
                    let g = r(&(&a * &a_bar) - &(&nz * &nu))?;
                    Ok((&g * &wave(KernelParams::Complex { n, p: p - 1, q: q - 1 })?).scale(&ExactScalar::int(64)))
                }
                IOp::I2 => Ok(SparsePolynomial::zero(&sys)),
            }
        }
        KernelParams::Symplectic { .. } => Err(Error::InvalidParams("action lemmas cover the real and complex waves".into())),
    }
}

/// The real-coordinate form of the `St2` operator
/// `I₂ = Δ_wΔ_v − ⟨∇_w,∇_v⟩² − ⟨∇_w,J∇_v⟩²` on ℝ^{2N}, applied to `f(s,t)`
/// after substituting `s_j = v_j + i v_{N+j}`, `t_j = w_j + i w_{N+j}`.
/// Returns `(real-form I₂ f, complex-form I₂ f)`, both in real coordinates.
pub fn i2_real_form_pair(n: usize, f_text: &str) -> Result<(SparsePolynomial, SparsePolynomial)> {
    let sys = VariableSystem::builder()
        .complex("s", n)
        .complex("t", n)
        .real("v", 2 * n)
        .real("w", 2 * n)
        .build()?;
    let f = crate::parse::parse_poly(&sys, f_text)?;
    let ctx = StiefelContext::new(&sys, Manifold::St2, "s", "t")?;
    let complex_side = ctx.i2(&f)?;
    let to_real = |p: &SparsePolynomial| -> Result<SparsePolynomial> {
        let mut map = FxHashMap::default();
        for (c, r) in [("s", "v"), ("t", "w")] {
            let gc = sys.group(c)?;
            let gr = sys.group(r)?;
            for j in 0..n {
                let re = SparsePolynomial::var(&sys, gr.sym(j));
                let im = SparsePolynomial::var(&sys, gr.sym(n + j)).scale(&ExactScalar::i());
                map.insert(gc.sym(j), &re + &im);
                map.insert(gc.bar(j), &re - &im);
            }
        }
        Ok(p.substitute(&map))
    };
    let fr = to_real(&f)?;
    let gv = sys.group("v")?.clone();
    let gw = sys.group("w")?.clone();
    let lap = |p: &SparsePolynomial, g: &Group| {
        let parts: Vec<_> = (0..g.len).map(|j| (g.sym(j), g.sym(j), ExactScalar::one())).collect();
        crate::operators::second_order(p, &parts)
    };
    let dd = lap(&lap(&fr, &gv), &gw);
    let gg = grad_pair(&grad_pair(&fr, "w", "v", GradPair::Real)?, "w", "v", GradPair::Real)?;
    // J(a, b) = (−b, a) on the real and imaginary halves
    let jparts: Vec<_> = (0..n)
        .flat_map(|j| {
            [
                (gw.sym(j), gv.sym(n + j), ExactScalar::int(-1)),
                (gw.sym(n + j), gv.sym(j), ExactScalar::one()),
            ]
        })
        .collect();
    let jj = crate::operators::second_order(&crate::operators::second_order(&fr, &jparts), &jparts);
    let real_side = &(&dd - &gg) - &jj;
    Ok((real_side, to_real(&complex_side)?))
}

/// Which constant multiplies the normalized mean in a plane-wave identity.
#[derive(Debug, Clone)]
pub struct ConstantReading {
    pub name: &'static str,
    pub value: BigRational,
}

fn complex_readings(dim_n: u32, p: u32, q: u32) -> Vec<ConstantReading> {
    let lam = lambda_complex(dim_n, p, q);
    let dim = BigRational::from_integer(dim_complex(dim_n, p, q));
    let pq2 = (factorial_q(p) * factorial_q(q)).pow(2);
    let nu_fact = factorial_q(p.min(q));
    vec![
        ConstantReading {
            name: "lambda*dimH",
            value: &lam * &dim,
        },
        ConstantReading {
            name: "lambda*dimH*(p!q!)^2",
            value: &lam * &dim * &pq2,
        },
        ConstantReading {
            name: "lambda*dimH/nu!",
            value: &lam * &dim / &nu_fact,
        },
        ConstantReading {
            name: "lambda*dimH*(p!q!)^2/nu!",
            value: &lam * &dim * &pq2 / &nu_fact,
        },
    ]
}

fn symplectic_readings(n: u32, p: u32, q: u32) -> Vec<ConstantReading> {
    let lam = lambda_complex(2 * n, p, q);
    let pq2 = (factorial_q(p) * factorial_q(q)).pow(2);
    let mut out = vec![
        ConstantReading {
            name: "lambda",
            value: lam.clone(),
        },
        ConstantReading {
            name: "lambda*(p!q!)^2",
            value: &lam * &pq2,
        },
        ConstantReading {
            name: "lambda/nu!",
            value: &lam / factorial_q(p.min(q)),
        },
    ];
    out.extend(complex_readings(2 * n, p, q));
    out
}

enum ReadingMatch {
    /// Kernel and mean are both zero; no constant is determined.
    Vanishes,
    /// Every reading `c` with `c·mean == target`.
    Matches(Vec<&'static str>),
    /// No reading matches; the exact ratio when the two are proportional.
    None(Option<ExactScalar>),
}

fn match_readings(readings: &[ConstantReading], mean: &SparsePolynomial, target: &SparsePolynomial) -> ReadingMatch {
    if mean.is_zero() && target.is_zero() {
        return ReadingMatch::Vanishes;
    }
    if mean.is_zero() {
        return ReadingMatch::None(None);
    }
    let Some(ratio) = target.ratio_to(mean) else {
        return ReadingMatch::None(None);
    };
    let names: Vec<_> = readings
        .iter()
        .filter(|r| ExactScalar::real(r.value.clone()) == ratio)
        .map(|r| r.name)
        .collect();
    if names.is_empty() {
        ReadingMatch::None(Some(ratio))
    } else {
        ReadingMatch::Matches(names)
    }
}

/// Check the plane-wave representation of the reproducing kernel for `params`.
pub fn verify_planewave(params: &KernelParams, caps: &Caps) -> VerificationReport {
    let id = match params {
        KernelParams::Real { .. } => "planewave.real",
        KernelParams::Complex { .. } => "planewave.complex",
        KernelParams::Symplectic { .. } => "planewave.symplectic",
    };
    let mut report = VerificationReport::new(id, *params);
    let outcome = (|| -> Result<()> {
        params.validate()?;
        let ctx = StiefelContext::for_params(params)?;
        match *params {
            KernelParams::Real { m, k } => {
                let wave = plane_wave(params)?;
                caps.guard_poly(&wave.left)?;
                let mean = ctx.mean_product(&wave.left, &wave.right, caps)?;
                let c = lambda_real(m, k) * BigRational::from_integer(dim_spherical(m, k));
                let lhs = kernel_with(params, KernelKind::K, Orientation::ZbarU)?;
                report.check_eq(&lhs, &mean.scale(&ExactScalar::real(c)));
            }
            KernelParams::Complex { n, p, q } => {
                let wave = plane_wave(params)?;
                caps.guard_poly(&wave.left)?;
                let mean = ctx.mean_product(&wave.left, &wave.right, caps)?;
                let lhs = kernel_with(params, KernelKind::K, Orientation::ZbarU)?;
                let readings = complex_readings(n, p, q);
                let mut winner = None;
                for r in &readings {
                    let ok = lhs == mean.scale(&ExactScalar::real(r.value.clone()));
                    report.note(format!("constant {}: {}", r.name, if ok { "verified" } else { "does not match" }));
                    if ok && winner.is_none() {
                        winner = Some(r.name);
                    }
                }
                if let Some(name) = winner {
                    report.note(format!("resolved constant: {name}"));
                } else {
                    let c = ExactScalar::real(readings[0].value.clone());
                    report.check_eq(&lhs, &mean.scale(&c));
                }
            }
            KernelParams::Symplectic { n, p, q } => {
                let readings = symplectic_readings(n, p, q);
                let projected = symplectic_plane_wave(params, SymplecticWave::Projected)?;
                caps.guard_poly(&projected.left)?;
                let mean = ctx.mean_product(&projected.left, &projected.right, caps)?;
                let mut verified = false;
                for orientation in [Orientation::ZbarU, Orientation::ZUbar] {
                    let target = kernel_with(params, KernelKind::KS, orientation)?;
                    let tag = match orientation {
                        Orientation::ZbarU => "<zbar,u>^(q-p)",
                        Orientation::ZUbar => "<z,ubar>^(q-p)",
                    };
                    match match_readings(&readings, &mean, &target) {
                        ReadingMatch::Vanishes => {
                            report.note(format!("projected wave, kernel factor {tag}: kernel and mean both vanish"));
                            verified |= orientation == Orientation::ZbarU;
                        }
                        ReadingMatch::Matches(names) => {
                            report.note(format!("projected wave, kernel factor {tag}: constant {} verified", names.join(" = ")));
                            verified |= orientation == Orientation::ZbarU;
                        }
                        ReadingMatch::None(Some(c)) => {
                            report.note(format!("projected wave, kernel factor {tag}: kernel = {c} x mean, matching no listed reading"))
                        }
                        ReadingMatch::None(None) => {
                            report.note(format!("projected wave, kernel factor {tag}: mean not proportional to the kernel"))
                        }
                    }
                }
                let printed = symplectic_plane_wave(params, SymplecticWave::Printed)?;
                let flipped = negate_group(&printed.left, "s")?;
                match flipped.ratio_to(&projected.left) {
                    Some(c) => report.note(format!("printed wave with s -> -s equals {c} x projected wave")),
                    None => report.note("printed wave is not proportional to the projected wave"),
                }
                let target = kernel_with(params, KernelKind::KS, Orientation::ZbarU)?;
                let printed_mean = ctx.mean_product(&printed.left, &printed.right, caps)?;
                match match_readings(&readings, &printed_mean, &target) {
                    ReadingMatch::Vanishes => report.note("printed wave: kernel and mean both vanish"),
                    ReadingMatch::Matches(names) => {
                        report.note(format!("printed wave: constant {} verified", names.join(" = ")))
                    }
                    ReadingMatch::None(Some(c)) => {
                        report.note(format!("printed wave: kernel = {c} x mean, matching no listed reading"))
                    }
                    ReadingMatch::None(None) => report.note("printed wave: mean not proportional to the kernel"),
                }
                if !verified {
                    let c = ExactScalar::real(readings[0].value.clone());
                    report.check_eq(&target, &mean.scale(&c));
                }
            }
        }
        Ok(())
    })();
    report.absorb(outcome);
    debug_assert!(report.status != Status::Fail || report.witness.is_some());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn st1(m: usize) -> (Arc<VariableSystem>, StiefelContext) {
        let sys = VariableSystem::builder()
            .real("x", m)
            .real("y", m)
            .real("s", m)
            .real("t", m)
            .build()
            .unwrap();
        let ctx = StiefelContext::new(&sys, Manifold::St1, "s", "t").unwrap();
        (sys, ctx)
    }

    #[test]
    fn st1_small_means() {
        let (sys, ctx) = st1(3);
        let one = SparsePolynomial::one(&sys);
        assert_eq!(ctx.mean(&one), one);
        let t1 = parse_poly(&sys, "t[1]^2").unwrap();
        assert_eq!(ctx.mean(&t1).to_string(), "1/3");
        assert_eq!(ctx.mean_by_operators(&t1).unwrap().to_string(), "1/3");
        let wave = plane_wave(&KernelParams::Real { m: 3, k: 1 }).unwrap();
        let mean = ctx.mean_product(&wave.left, &wave.right, &Caps::default()).unwrap();
        let xy = dot(wave.left.system(), "x", "y").unwrap().scale(&ExactScalar::ratio(2, 3));
        assert_eq!(mean, xy);
    }

    #[test]
    fn st2_unitary_moment() {
        let sys = VariableSystem::builder().complex("s", 2).complex("t", 2).build().unwrap();
        let ctx = StiefelContext::new(&sys, Manifold::St2, "s", "t").unwrap();
        let f = parse_poly(&sys, "s[1]*sbar[1]*t[2]*tbar[2]").unwrap();
        assert_eq!(ctx.mean(&f).to_string(), "1/3");
        assert_eq!(ctx.mean_by_operators(&f).unwrap().to_string(), "1/3");
        let g = parse_poly(&sys, "s[1]*sbar[1]+t[1]*tbar[1]").unwrap();
        assert_eq!(ctx.mean(&g).to_string(), "1");
    }

    #[test]
    fn symbol_path_matches_operators_on_mixed_monomials() {
        let sys = VariableSystem::builder().complex("s", 2).complex("t", 2).build().unwrap();
        let ctx = StiefelContext::new(&sys, Manifold::St2, "s", "t").unwrap();
        for text in [
            "s[1]*tbar[1]*sbar[2]*t[2]",
            "s[1]^2*sbar[1]^2",
            "s[1]*sbar[2]*t[2]*tbar[1]",
            "s[1]*s[2]*sbar[1]*sbar[2]*t[1]*tbar[1]",
        ] {
            let f = parse_poly(&sys, text).unwrap();
            assert_eq!(ctx.mean(&f), ctx.mean_by_operators(&f).unwrap(), "{text}");
        }
    }

    #[test]
    fn j_matrix_form_agrees() {
        let (real, complex) = i2_real_form_pair(2, "s[1]*tbar[1]*sbar[2]*t[2] + 3*s[1]*sbar[1]*t[2]*tbar[2]").unwrap();
        assert_eq!(real, complex);
    }
}
