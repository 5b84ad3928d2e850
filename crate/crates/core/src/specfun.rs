//! Exact special functions: Pochhammer symbols, binomials, Gegenbauer and
//! Jacobi polynomials, and dimensions of the harmonic spaces.
//!
//! Gamma functions only ever appear as ratios at integer offsets, so they
//! are evaluated as rising products and everything stays rational.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::KernelParams;
use crate::scalar::{rat_int, ExactScalar};

/// Rising product `(a)_r = a(a+1)⋯(a+r−1)`; `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, r: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..r {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` as a rational.
pub fn factorial_q(n: u32) -> BigRational {
    BigRational::from_integer(factorial(n))
}

/// Ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `a(a−1)⋯(a−k+1)/k!` for rational `a`.
pub fn gen_binomial(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for i in 1..=k {
        acc *= &x;
        acc /= rat_int(i as i64);
        x -= BigRational::one();
    }
    acc
}

/// A polynomial in one formal argument with exact coefficients
/// (`coeffs[i]` multiplies `t^i`).
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariateExact {
    coeffs: Vec<ExactScalar>,
    label: String,
}

impl UnivariateExact {
    pub fn new(label: &str, coeffs: Vec<ExactScalar>) -> Self {
        let mut u = UnivariateExact {
            coeffs,
            label: label.to_string(),
        };
        u.trim();
        u
    }

    pub fn from_rationals(label: &str, coeffs: Vec<BigRational>) -> Self {
        Self::new(label, coeffs.into_iter().map(ExactScalar::real).collect())
    }

    pub fn zero(label: &str) -> Self {
        Self::new(label, Vec::new())
    }

    pub fn constant(label: &str, c: ExactScalar) -> Self {
        Self::new(label, vec![c])
    }

    /// The affine polynomial `a·t + b`.
    pub fn affine(label: &str, a: BigRational, b: BigRational) -> Self {
        Self::from_rationals(label, vec![b, a])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::new(&self.label, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::new(&self.label, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.label);
        }
        let mut coeffs = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::new(&self.label, coeffs)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(&self.label, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// `self(inner(t))`, relabelled with the inner argument.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&inner.label);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(&inner.label, c.clone()));
        }
        acc
    }

    /// `self(−t)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::new(&self.label, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.label, ExactScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for UnivariateExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*{}", self.label),
                _ => format!("{c}*{}^{i}", self.label),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UnivariateExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Gegenbauer polynomial
/// `C_k^μ(t) = Σ_ρ (−1)^ρ (μ)_{k−ρ} / (ρ!(k−2ρ)!) (2t)^{k−2ρ}`, for `μ > 0`.
pub fn gegenbauer(k: u32, mu: &BigRational) -> Result<UnivariateExact> {
    if !mu.is_positive() {
        return Err(Error::OutOfRange(format!("Gegenbauer parameter must be positive, got {mu}")));
    }
    let mut coeffs = vec![BigRational::zero(); k as usize + 1];
    for rho in 0..=k / 2 {
        let d = k - 2 * rho;
        let mut c = pochhammer(mu, k - rho) / (factorial_q(rho) * factorial_q(d));
        c *= BigRational::from_integer(BigInt::from(2).pow(d));
        if rho % 2 == 1 {
            c = -c;
        }
        coeffs[d as usize] = c;
    }
    Ok(UnivariateExact::from_rationals("t", coeffs))
}

/// Jacobi polynomial `P_ν^{α,β}(x)` for `α, β > −1`.
pub fn jacobi(nu: u32, alpha: &BigRational, beta: &BigRational) -> Result<UnivariateExact> {
    let m1 = -BigRational::one();
    if alpha <= &m1 || beta <= &m1 {
        return Err(Error::OutOfRange(format!(
            "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(jacobi_sum(nu, alpha, beta))
}

/// The binomial-sum form
/// `Σ_s C(ν+α, ν−s) C(ν+β, s) ((x−1)/2)^s ((x+1)/2)^{ν−s}`,
/// a polynomial identity in `α, β` and therefore meaningful for every
/// rational parameter, including `α = −1`.
pub fn jacobi_sum(nu: u32, alpha: &BigRational, beta: &BigRational) -> UnivariateExact {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let xm = UnivariateExact::affine("x", half.clone(), -half.clone());
    let xp = UnivariateExact::affine("x", half.clone(), half);
    let na = rat_int(nu as i64) + alpha;
    let nb = rat_int(nu as i64) + beta;
    let mut acc = UnivariateExact::zero("x");
    for s in 0..=nu {
        let c = gen_binomial(&na, nu - s) * gen_binomial(&nb, s);
        if c.is_zero() {
            continue;
        }
        let term = xm.pow(s).mul(&xp.pow(nu - s)).scale(&ExactScalar::real(c));
        acc = acc.add(&term);
    }
    acc
}

/// `P(2s − 1)` expanded in powers of `s`.
pub fn at_two_s_minus_one(p: &UnivariateExact) -> UnivariateExact {
    p.compose(&UnivariateExact::affine("s", rat_int(2), rat_int(-1)))
}

/// `dim P_k(ℝ^m) = C(k+m−1, m−1)`.
pub fn dim_homogeneous(m: u32, k: u32) -> BigInt {
    binomial(k + m - 1, m - 1)
}

/// `dim P_{p,q}(ℂ^n)`.
pub fn dim_bihomogeneous(n: u32, p: u32, q: u32) -> BigInt {
    binomial(p + n - 1, n - 1) * binomial(q + n - 1, n - 1)
}

/// `dim H_k = (2k+m−2)/(k+m−2) · C(k+m−2, m−2)`.
pub fn dim_spherical(m: u32, k: u32) -> BigInt {
    if m < 2 {
        return if k <= 1 { BigInt::one() } else { BigInt::zero() };
    }
    if k + m == 2 {
        return BigInt::one();
    }
    let v = BigInt::from(2 * k + m - 2) * binomial(k + m - 2, m - 2);
    let (q, r) = v.div_rem(&BigInt::from(k + m - 2));
    debug_assert!(r.is_zero());
    q
}

/// `dim H_{p,q} = (n+p+q−1)/(n−1) · C(q+n−2, n−2) · C(p+n−2, n−2)`, `n ≥ 2`.
pub fn dim_complex(n: u32, p: u32, q: u32) -> BigInt {
    assert!(n >= 2, "complex dimension must be at least 2");
    let v = BigInt::from(n + p + q - 1) * binomial(q + n - 2, n - 2) * binomial(p + n - 2, n - 2);
    let (d, r) = v.div_rem(&BigInt::from(n - 1));
    debug_assert!(r.is_zero());
    d
}

/// `dim R_{p,q}` in ℂ^{2n} for `p ≤ q`: `dim P_{p,q} − dim P_{p−1,q+1}`.
pub fn dim_symplectic_r(n: u32, p: u32, q: u32) -> BigInt {
    assert!(p <= q);
    let big = 2 * n;
    let lower = if p == 0 {
        BigInt::zero()
    } else {
        dim_bihomogeneous(big, p - 1, q + 1)
    };
    dim_bihomogeneous(big, p, q) - lower
}

/// `dim H^S_{p,q}` in ℂ^{2n} for `p ≤ q`: `dim R_{p,q} − dim R_{p−1,q−1}`.
pub fn dim_symplectic_hs(n: u32, p: u32, q: u32) -> BigInt {
    assert!(p <= q);
    let lower = if p == 0 {
        BigInt::zero()
    } else {
        dim_symplectic_r(n, p - 1, q - 1)
    };
    dim_symplectic_r(n, p, q) - lower
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Spherical,
    ComplexBidegree,
    SymplecticR,
    SymplecticHs,
}

/// Dimension of the space selected by `which` at `params`.
pub fn dim_formula(params: &KernelParams, which: DimKind) -> Result<BigInt> {
    params.validate()?;
    match (which, *params) {
        (DimKind::Spherical, KernelParams::Real { m, k }) => Ok(dim_spherical(m, k)),
        (DimKind::ComplexBidegree, KernelParams::Complex { n, p, q }) => Ok(dim_complex(n, p, q)),
        (DimKind::ComplexBidegree, KernelParams::Symplectic { n, p, q }) => Ok(dim_complex(2 * n, p, q)),
        (DimKind::SymplecticR, KernelParams::Symplectic { n, p, q }) => Ok(dim_symplectic_r(n, p, q)),
        (DimKind::SymplecticHs, KernelParams::Symplectic { n, p, q }) => Ok(dim_symplectic_hs(n, p, q)),
        (w, p) => Err(Error::InvalidParams(format!("{w:?} is not defined for {p}"))),
    }
}

/// `λ_k = (μ+1)_k / k!` with `μ = m/2 − 1`, the binomial `C(k+μ, μ)` for half-integer `μ`.
pub fn lambda_real(m: u32, k: u32) -> BigRational {
    let mu1 = BigRational::new(BigInt::from(m), BigInt::from(2));
    pochhammer(&mu1, k) / factorial_q(k)
}

/// `λ_{p,q} = (k+n−1)! / (2^k (n−1)! (k−ν)!)`.
pub fn lambda_complex(n: u32, p: u32, q: u32) -> BigRational {
    let k = p + q;
    let nu = p.min(q);
    factorial_q(k + n - 1) / (BigRational::from_integer(BigInt::from(2).pow(k)) * factorial_q(n - 1) * factorial_q(k - nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(7, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(3, 1), 2), rat(12, 1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(gen_binomial(&rat(-1, 1), 3), rat(-1, 1));
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn dims() {
        assert_eq!(dim_spherical(3, 2), BigInt::from(5));
        assert_eq!(dim_spherical(4, 3), BigInt::from(16));
        assert_eq!(dim_complex(2, 1, 1), BigInt::from(3));
    }
}
