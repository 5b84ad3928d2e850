//! Sparse multivariate polynomials with Gaussian-rational coefficients.
//!
//! Terms are kept in canonical order (descending graded lex over symbol ids)
//! with no zero coefficients, so two polynomials are equal exactly when
//! their term vectors are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::ExactScalar;
use crate::system::{Group, Kind, Sym, VariableSystem};

#[derive(Clone)]
pub struct SparsePolynomial {
    system: Arc<VariableSystem>,
    terms: Vec<(Monomial, ExactScalar)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Homogeneity of a polynomial with respect to one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeProfile {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
    Bidegree(u32, u32),
    Inhomogeneous,
}

impl DegreeProfile {
    pub fn scaled(self, e: u32) -> DegreeProfile {
        match self {
            DegreeProfile::Degree(d) => DegreeProfile::Degree(d * e),
            DegreeProfile::Bidegree(p, q) => DegreeProfile::Bidegree(p * e, q * e),
            other => other,
        }
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeProfile::Zero => write!(f, "any"),
            DegreeProfile::Degree(d) => write!(f, "{d}"),
            DegreeProfile::Bidegree(p, q) => write!(f, "({p},{q})"),
            DegreeProfile::Inhomogeneous => write!(f, "inhomogeneous"),
        }
    }
}

/// Hash-map accumulator for sums of many terms; `finish` sorts once.
pub struct Accumulator {
    system: Arc<VariableSystem>,
    map: FxHashMap<Monomial, ExactScalar>,
}

impl Accumulator {
    pub fn new(system: &Arc<VariableSystem>) -> Self {
        Accumulator {
            system: system.clone(),
            map: FxHashMap::default(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&m) {
            Some(v) => *v += c,
            None => {
                self.map.insert(m, c.clone());
            }
        }
    }

    pub fn add_term_owned(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&m) {
            Some(v) => *v += &c,
            None => {
                self.map.insert(m, c);
            }
        }
    }

    pub fn add_poly(&mut self, p: &SparsePolynomial) {
        self.assert_system(p);
        for (m, c) in &p.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, p: &SparsePolynomial, s: &ExactScalar) {
        self.assert_system(p);
        if s.is_zero() {
            return;
        }
        for (m, c) in &p.terms {
            self.add_term_owned(m.clone(), c * s);
        }
    }

    /// Add `s · mono · p`.
    pub fn add_product(&mut self, p: &SparsePolynomial, mono: &Monomial, s: &ExactScalar) {
        self.assert_system(p);
        if s.is_zero() {
            return;
        }
        for (m, c) in &p.terms {
            self.add_term_owned(m.mul(mono), c * s);
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn finish(self) -> SparsePolynomial {
        let terms: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SparsePolynomial::from_unsorted(self.system, terms)
    }

    fn assert_system(&self, p: &SparsePolynomial) {
        assert!(same_system(&self.system, &p.system), "variable system mismatch");
    }
}

fn same_system(a: &Arc<VariableSystem>, b: &Arc<VariableSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SparsePolynomial {
    pub fn zero(system: &Arc<VariableSystem>) -> Self {
        SparsePolynomial {
            system: system.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(system: &Arc<VariableSystem>, c: ExactScalar) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(), c)]
        };
        SparsePolynomial {
            system: system.clone(),
            terms,
        }
    }

    pub fn one(system: &Arc<VariableSystem>) -> Self {
        Self::constant(system, ExactScalar::one())
    }

    pub fn var(system: &Arc<VariableSystem>, s: Sym) -> Self {
        Self::monomial(system, Monomial::var(s), ExactScalar::one())
    }

    pub fn monomial(system: &Arc<VariableSystem>, m: Monomial, c: ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(system);
        }
        SparsePolynomial {
            system: system.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Normalize an arbitrary term list (duplicates merged, zeros dropped).
    pub fn from_terms(system: &Arc<VariableSystem>, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut acc = Accumulator::new(system);
        for (m, c) in terms {
            acc.add_term_owned(m, c);
        }
        acc.finish()
    }

    /// Terms must already be distinct and nonzero.
    fn from_unsorted(system: Arc<VariableSystem>, mut terms: Vec<(Monomial, ExactScalar)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePolynomial { system, terms }
    }

    pub fn system(&self) -> &Arc<VariableSystem> {
        &self.system
    }

    pub fn terms(&self) -> &[(Monomial, ExactScalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Checked ring operation; fails if the variable systems differ.
    pub fn combine(a: &SparsePolynomial, b: &SparsePolynomial, op: RingOp) -> Result<SparsePolynomial> {
        if !same_system(&a.system, &b.system) {
            return Err(Error::SystemMismatch);
        }
        Ok(match op {
            RingOp::Add => a.merge(b, false),
            RingOp::Sub => a.merge(b, true),
            RingOp::Mul => a.mul_unchecked(b),
        })
    }

    fn merge(&self, other: &SparsePolynomial, negate: bool) -> SparsePolynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match b[j].0.cmp(&a[i].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        SparsePolynomial {
            system: self.system.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &SparsePolynomial) -> SparsePolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.system);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc = Accumulator::new(&self.system);
        acc.map.reserve(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term_owned(ma.mul(mb), ca * cb);
            }
        }
        acc.finish()
    }

    /// Multiply by the single term `c·m` (order preserving).
    pub fn mul_term(&self, m: &Monomial, c: &ExactScalar) -> SparsePolynomial {
        if c.is_zero() {
            return Self::zero(&self.system);
        }
        SparsePolynomial {
            system: self.system.clone(),
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn mul_var(&self, s: Sym) -> SparsePolynomial {
        self.mul_term(&Monomial::var(s), &ExactScalar::one())
    }

    pub fn scale(&self, c: &ExactScalar) -> SparsePolynomial {
        if c.is_zero() {
            return Self::zero(&self.system);
        }
        if c.is_one() {
            return self.clone();
        }
        SparsePolynomial {
            system: self.system.clone(),
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> SparsePolynomial {
        self.scale(&ExactScalar::real(r.clone()))
    }

    /// Exact power by repeated squaring; `power(0)` is 1.
    pub fn power(&self, e: u32) -> SparsePolynomial {
        let mut result = Self::one(&self.system);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative in one symbol (`z` and `zbar` independent).
    pub fn partial(&self, s: Sym) -> SparsePolynomial {
        assert!((s as usize) < self.system.symbol_count(), "symbol out of range");
        // lowering one exponent by one keeps the grlex order of the surviving terms
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                m.lower(s)
                    .map(|(lm, e)| (lm, c.scale(&BigRational::from_integer(BigInt::from(e)))))
            })
            .collect();
        SparsePolynomial {
            system: self.system.clone(),
            terms,
        }
    }

    /// Derivative by textual symbol, e.g. `("zbar", 1)`.
    pub fn partial_named(&self, name: &str, index1: usize) -> Result<SparsePolynomial> {
        let s = self.system.lookup(name, index1)?;
        Ok(self.partial(s))
    }

    /// Conjugate every coefficient and swap `z[j]` with `zbar[j]` in every complex group.
    pub fn conjugate(&self) -> SparsePolynomial {
        let sys = self.system.clone();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.map_symbols(|s| sys.conj_sym(s)), c.conj()))
            .collect();
        Self::from_unsorted(self.system.clone(), terms)
    }

    /// Substitute 0 for every symbol of `group`.
    pub fn restrict_zero(&self, group: &str) -> Result<SparsePolynomial> {
        let g = self.system.group(group)?.clone();
        Ok(self.restrict_zero_group(&g))
    }

    pub fn restrict_zero_group(&self, g: &Group) -> SparsePolynomial {
        let terms = self.terms.iter().filter(|(m, _)| !m.any(|s| g.contains(s))).cloned().collect();
        SparsePolynomial {
            system: self.system.clone(),
            terms,
        }
    }

    /// Drop every term that contains a symbol satisfying `pred`.
    pub fn restrict_zero_where(&self, pred: impl Fn(Sym) -> bool) -> SparsePolynomial {
        let terms = self.terms.iter().filter(|(m, _)| !m.any(&pred)).cloned().collect();
        SparsePolynomial {
            system: self.system.clone(),
            terms,
        }
    }

    pub fn degree_profile(&self, group: &str) -> Result<DegreeProfile> {
        let g = self.system.group(group)?;
        Ok(self.degree_profile_group(g))
    }

    pub fn degree_profile_group(&self, g: &Group) -> DegreeProfile {
        if self.is_zero() {
            return DegreeProfile::Zero;
        }
        let sys = &self.system;
        let degs = |m: &Monomial| -> (u32, u32) {
            let mut hol = 0;
            let mut anti = 0;
            for (s, e) in m.iter() {
                if g.contains(s) {
                    if sys.info(s).bar {
                        anti += e as u32;
                    } else {
                        hol += e as u32;
                    }
                }
            }
            (hol, anti)
        };
        let first = degs(&self.terms[0].0);
        if self.terms.iter().any(|(m, _)| degs(m) != first) {
            return DegreeProfile::Inhomogeneous;
        }
        match g.kind {
            Kind::Real => DegreeProfile::Degree(first.0),
            Kind::Complex => DegreeProfile::Bidegree(first.0, first.1),
        }
    }

    /// Does any term use a symbol outside the listed groups?
    pub fn uses_only(&self, groups: &[&Group]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| !m.any(|s| !groups.iter().any(|g| g.contains(s))))
    }

    /// Group terms by their part in the symbols selected by `pred`:
    /// `P = Σ key · coeff(key)`, where `coeff` is free of selected symbols.
    /// Keys come out in canonical order.
    pub fn split_by(&self, pred: impl Fn(Sym) -> bool) -> Vec<(Monomial, SparsePolynomial)> {
        let mut map: FxHashMap<Monomial, Vec<(Monomial, ExactScalar)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            map.entry(key).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<_> = map
            .into_iter()
            .map(|(k, ts)| (k, Self::from_unsorted(self.system.clone(), ts)))
            .collect();
        out.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Substitute polynomials for symbols. Symbols without an entry stay.
    pub fn substitute(&self, map: &FxHashMap<Sym, SparsePolynomial>) -> SparsePolynomial {
        let mut power_cache: FxHashMap<(Sym, u16), SparsePolynomial> = FxHashMap::default();
        let mut acc = Accumulator::new(&self.system);
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut prod = SparsePolynomial::constant(&self.system, c.clone());
            for (s, e) in m.iter() {
                match map.get(&s) {
                    Some(p) => {
                        let pw = power_cache.entry((s, e)).or_insert_with(|| p.power(e as u32));
                        prod = &prod * &*pw;
                    }
                    None => keep.push((s, e)),
                }
            }
            let rest = Monomial::from_pairs(keep);
            acc.add_product(&prod, &rest, &ExactScalar::one());
        }
        acc.finish()
    }

    /// Re-express in another system by mapping every symbol through `f`.
    pub fn transfer(&self, target: &Arc<VariableSystem>, f: impl Fn(Sym) -> Sym) -> SparsePolynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.map_symbols(&f), c.clone()));
        SparsePolynomial::from_terms(target, terms)
    }

    /// Replace the symbols of group `from` by those of the same-shaped group `to`.
    pub fn rename_group(&self, from: &str, to: &str) -> Result<SparsePolynomial> {
        let gf = self.system.group(from)?.clone();
        let gt = self.system.group(to)?.clone();
        if gf.len != gt.len || gf.kind != gt.kind {
            return Err(Error::LengthMismatch(from.into(), to.into()));
        }
        if self.terms.iter().any(|(m, _)| m.any(|s| gt.contains(s))) {
            return Err(Error::InvalidParams(format!("`{to}` already occurs")));
        }
        let base = gf.symbols().start;
        let tbase = gt.symbols().start;
        Ok(self.transfer(&self.system.clone(), |s| if gf.contains(s) { s - base + tbase } else { s }))
    }

    /// Exchange the roles of two same-shaped groups.
    pub fn swap_groups(&self, a: &str, b: &str) -> Result<SparsePolynomial> {
        let ga = self.system.group(a)?.clone();
        let gb = self.system.group(b)?.clone();
        if ga.len != gb.len || ga.kind != gb.kind {
            return Err(Error::LengthMismatch(a.into(), b.into()));
        }
        let (sa, sb) = (ga.symbols().start, gb.symbols().start);
        Ok(self.transfer(&self.system.clone(), |s| {
            if ga.contains(s) {
                s - sa + sb
            } else if gb.contains(s) {
                s - sb + sa
            } else {
                s
            }
        }))
    }

    /// First monomial (canonical order) where the two polynomials differ,
    /// with both coefficients.
    pub fn first_difference(&self, other: &SparsePolynomial) -> Option<(Monomial, ExactScalar, ExactScalar)> {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return None,
                (Some(ta), None) => return Some((ta.0.clone(), ta.1.clone(), ExactScalar::zero())),
                (None, Some(tb)) => return Some((tb.0.clone(), ExactScalar::zero(), tb.1.clone())),
                (Some(ta), Some(tb)) => match tb.0.cmp(&ta.0) {
                    std::cmp::Ordering::Less => return Some((ta.0.clone(), ta.1.clone(), ExactScalar::zero())),
                    std::cmp::Ordering::Greater => return Some((tb.0.clone(), ExactScalar::zero(), tb.1.clone())),
                    std::cmp::Ordering::Equal => {
                        if ta.1 != tb.1 {
                            return Some((ta.0.clone(), ta.1.clone(), tb.1.clone()));
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// If `self == c · other` for a scalar `c`, return it.
    pub fn ratio_to(&self, other: &SparsePolynomial) -> Option<ExactScalar> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_zero() {
            return Some(ExactScalar::one());
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .iter()
            .map(|(s, e)| {
                let n = self.system.symbol_name(s);
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.system, &other.system) && self.terms == other.terms
    }
}

impl Eq for SparsePolynomial {}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        SparsePolynomial::combine(self, rhs, RingOp::Add).expect("variable system mismatch")
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        SparsePolynomial::combine(self, rhs, RingOp::Sub).expect("variable system mismatch")
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        SparsePolynomial::combine(self, rhs, RingOp::Mul).expect("variable system mismatch")
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            system: self.system.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self + &rhs
    }
}

impl Sub for SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self - &rhs
    }
}

impl Mul for SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self * &rhs
    }
}

/// Sum of `Σ_j left[j] · right[j]` over coordinates of two groups, with the
/// symbol chosen per side; the building block for ⟨z,ū⟩, ‖z‖², ⟨x,y⟩ etc.
pub fn bilinear(
    system: &Arc<VariableSystem>,
    pairs: impl IntoIterator<Item = (Sym, Sym)>,
    coeff: impl Fn(usize) -> ExactScalar,
) -> SparsePolynomial {
    let terms = pairs
        .into_iter()
        .enumerate()
        .map(|(j, (a, b))| (Monomial::var(a).mul(&Monomial::var(b)), coeff(j)));
    SparsePolynomial::from_terms(system, terms)
}

/// Linear form `Σ c_j · s_j`.
pub fn linear(system: &Arc<VariableSystem>, terms: impl IntoIterator<Item = (Sym, ExactScalar)>) -> SparsePolynomial {
    SparsePolynomial::from_terms(system, terms.into_iter().map(|(s, c)| (Monomial::var(s), c)))
}

/// `∏ e_i!` over the exponents of the symbols accepted by `pred`.
pub fn factorial_weight(m: &Monomial, pred: impl Fn(Sym) -> bool) -> BigInt {
    let mut w = BigInt::one();
    for (s, e) in m.iter() {
        if pred(s) {
            for k in 2..=e as u64 {
                w *= k;
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn sys() -> Arc<VariableSystem> {
        VariableSystem::builder().real("x", 3).real("y", 2).complex("z", 2).build().unwrap()
    }

    fn p(s: &str) -> SparsePolynomial {
        parse_poly(&sys(), s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x[1]+x[2]");
        let b = p("x[1]-x[2]");
        assert_eq!(&a * &b, p("x[1]^2-x[2]^2"));
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = p("3*x[1]*y[2]-(1,2)*z[1]");
        assert_eq!(&a + &SparsePolynomial::zero(&sys()), a);
    }

    #[test]
    fn binomial_in_conjugate_symbols() {
        let a = p("z[1]+zbar[1]");
        assert_eq!(&a * &a, p("z[1]^2+2*z[1]*zbar[1]+zbar[1]^2"));
    }

    #[test]
    fn powers() {
        assert_eq!(p("x[1]").power(3), p("x[1]^3"));
        assert_eq!(p("x[1]+7*x[2]").power(0), SparsePolynomial::one(&sys()));
        assert_eq!(p("x[1]+x[2]").power(2), p("x[1]^2+2*x[1]*x[2]+x[2]^2"));
    }

    #[test]
    fn mismatched_systems_error() {
        let other = VariableSystem::builder().real("x", 3).build().unwrap();
        let a = SparsePolynomial::one(&other);
        let b = SparsePolynomial::one(&sys());
        assert_eq!(SparsePolynomial::combine(&a, &b, RingOp::Add), Err(Error::SystemMismatch));
    }

    #[test]
    fn wirtinger_partials() {
        let s = sys();
        assert_eq!(p("z[1]*zbar[1]").partial(s.lookup("z", 1).unwrap()), p("zbar[1]"));
        assert_eq!(p("x[1]^3").partial(s.lookup("x", 1).unwrap()), p("3*x[1]^2"));
        assert!(p("x[1]^2").partial(s.lookup("x", 2).unwrap()).is_zero());
        assert!(matches!(p("x[1]").partial_named("w", 1), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("(0,1)*z[1]").conjugate(), p("(0,-1)*zbar[1]"));
        let a = p("(2,3)*z[1]^2*zbar[2]+x[1]-1/2*zbar[1]*y[2]");
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(p("x[1]+2*x[2]").conjugate(), p("x[1]+2*x[2]"));
    }

    #[test]
    fn restriction() {
        assert_eq!(p("x[1]*y[1]+y[1]^2").restrict_zero("x").unwrap(), p("y[1]^2"));
        assert!(p("z[1]*zbar[1]").restrict_zero("z").unwrap().is_zero());
        assert_eq!(p("5").restrict_zero("y").unwrap(), p("5"));
        assert!(matches!(p("5").restrict_zero("q"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn degree_profiles() {
        assert_eq!(p("z[1]^2*zbar[2]").degree_profile("z").unwrap(), DegreeProfile::Bidegree(2, 1));
        assert_eq!(p("x[1]*x[2]^3").degree_profile("x").unwrap(), DegreeProfile::Degree(4));
        assert_eq!(p("x[1]+x[1]^2").degree_profile("x").unwrap(), DegreeProfile::Inhomogeneous);
        assert_eq!(SparsePolynomial::zero(&sys()).degree_profile("x").unwrap(), DegreeProfile::Zero);
    }

    #[test]
    fn ratio_and_difference() {
        let a = p("x[1]+2*x[2]");
        let b = a.scale(&ExactScalar::ratio(-3, 7));
        assert_eq!(b.ratio_to(&a), Some(ExactScalar::ratio(-3, 7)));
        let c = p("x[1]+3*x[2]");
        let (m, l, r) = a.first_difference(&c).unwrap();
        assert_eq!(a.monomial_name(&m), "x[2]");
        assert_eq!((l, r), (ExactScalar::int(2), ExactScalar::int(3)));
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn group_swaps_and_renames() {
        let s = VariableSystem::builder().complex("z", 2).complex("u", 2).build().unwrap();
        let a = parse_poly(&s, "z[1]*ubar[2]+2*zbar[1]").unwrap();
        assert_eq!(a.swap_groups("z", "u").unwrap(), parse_poly(&s, "u[1]*zbar[2]+2*ubar[1]").unwrap());
        let b = parse_poly(&s, "z[1]*zbar[2]").unwrap();
        assert_eq!(b.rename_group("z", "u").unwrap(), parse_poly(&s, "u[1]*ubar[2]").unwrap());
    }

    #[test]
    fn substitution() {
        let s = sys();
        let mut map = FxHashMap::default();
        map.insert(s.lookup("x", 1).unwrap(), p("y[1]+y[2]"));
        assert_eq!(p("x[1]^2*x[2]").substitute(&map), p("y[1]^2*x[2]+2*y[1]*y[2]*x[2]+y[2]^2*x[2]"));
    }
}
