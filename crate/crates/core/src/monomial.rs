use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::system::Sym;

/// Sparse exponent vector: `(symbol, exponent)` pairs sorted by symbol,
/// exponents never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(Sym, u16); 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Sym) -> Self {
        Self::var_pow(s, 1)
    }

    pub fn var_pow(s: Sym, e: u16) -> Self {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push((s, e));
        }
        Monomial(v)
    }

    /// Build from arbitrary pairs; merges duplicates and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Sym, u16)>) -> Self {
        let mut v: SmallVec<[(Sym, u16); 8]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Sym, u16); 8]> = SmallVec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Sym, u16)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1 as u32).sum()
    }

    pub fn exponent(&self, s: Sym) -> u16 {
        match self.0.binary_search_by_key(&s, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Sym, u16); 8]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lower the exponent of `s` by one; returns the old exponent, or `None`
    /// when `s` does not occur.
    pub fn lower(&self, s: Sym) -> Option<(Monomial, u16)> {
        let i = self.0.binary_search_by_key(&s, |p| p.0).ok()?;
        let e = self.0[i].1;
        let mut v = self.0.clone();
        if e == 1 {
            v.remove(i);
        } else {
            v[i].1 -= 1;
        }
        Some((Monomial(v), e))
    }

    /// Split into the part with symbols satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Sym) -> bool) -> (Monomial, Monomial) {
        let mut yes = SmallVec::new();
        let mut no = SmallVec::new();
        for &p in &self.0 {
            if pred(p.0) {
                yes.push(p);
            } else {
                no.push(p);
            }
        }
        (Monomial(yes), Monomial(no))
    }

    pub fn any(&self, pred: impl Fn(Sym) -> bool) -> bool {
        self.0.iter().any(|p| pred(p.0))
    }

    /// Degree restricted to symbols satisfying `pred`.
    pub fn degree_in(&self, pred: impl Fn(Sym) -> bool) -> u32 {
        self.0.iter().filter(|p| pred(p.0)).map(|p| p.1 as u32).sum()
    }

    /// Apply a symbol relabelling (need not be monotone).
    pub fn map_symbols(&self, f: impl Fn(Sym) -> Sym) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(s, e)| (f(s), e)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, u16)> + '_ {
        self.0.iter().copied()
    }
}

/// Graded lexicographic order: higher total degree is greater; ties are
/// broken by the first symbol (in id order) where exponents differ, the
/// larger exponent being greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            let (sa, ea) = a[k];
            let (sb, eb) = b[k];
            if sa != sb {
                // the side with the earlier symbol has a positive exponent where the other has 0
                return if sa < sb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        assert!(x1 > x2);
        assert!(Monomial::var_pow(1, 2) > x1);
        let x1x2 = x1.mul(&x2);
        assert!(Monomial::var_pow(0, 2) > x1x2);
        assert!(x1x2 > Monomial::var_pow(1, 2));
        assert!(x1 > Monomial::one());
    }

    #[test]
    fn lower_and_mul() {
        let m = Monomial::from_pairs([(3, 2), (1, 1), (3, 1)]);
        assert_eq!(m.pairs(), &[(1, 1), (3, 3)]);
        let (l, e) = m.lower(1).unwrap();
        assert_eq!(e, 1);
        assert_eq!(l, Monomial::var_pow(3, 3));
        assert!(m.lower(2).is_none());
        assert_eq!(l.mul(&Monomial::var(1)), m);
    }
}
