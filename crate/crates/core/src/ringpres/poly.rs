use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::order::MonomialOrder;

/// A monomial as a sparse exponent list, sorted by variable, no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: usize, e: u32) -> Self {
        Self::from_exponents(vec![(v, e)])
    }

    /// From `(variable, exponent)` pairs in any order; repeated variables add.
    pub fn from_exponents(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut exps: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match exps.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => exps.push((v, e)),
            }
        }
        exps.retain(|&(_, e)| e > 0);
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps.binary_search_by_key(&v, |&(w, _)| w).map_or(0, |k| self.exps[k].1)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// The single variable of a pure power `v^e`, if this is one.
    pub fn pure_power(&self) -> Option<usize> {
        match self.exps.as_slice() {
            [(v, _)] => Some(*v),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(a, e)), Some(&(b, f))) if a == b => {
                    out.push((a, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, e)), Some(&(b, _))) if a < b => {
                    out.push((a, e));
                    i += 1;
                }
                (Some(&(a, e)), None) => {
                    out.push((a, e));
                    i += 1;
                }
                (_, Some(&(b, f))) => {
                    out.push((b, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            match other.exps.get(j) {
                Some(&(w, f)) if w == v && f >= e => j += 1,
                _ => return false,
            }
        }
        true
    }

    /// `other / self`; panics unless `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        let pairs = other.exps.iter().map(|&(v, f)| {
            let e = self.exponent(v);
            assert!(f >= e, "monomial does not divide");
            (v, f - e)
        });
        let m = Monomial::from_exponents(pairs.collect());
        assert_eq!(m.degree() + self.degree(), other.degree(), "monomial does not divide");
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(usize, u32)> = self.exps.clone();
        for &(v, f) in &other.exps {
            match pairs.iter_mut().find(|(w, _)| *w == v) {
                Some((_, e)) => *e = (*e).max(f),
                None => pairs.push((v, f)),
            }
        }
        Monomial::from_exponents(pairs)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exponent(v) == 0)
    }

    /// Renames variables through `perm` (variable `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|&(v, e)| (perm[v], e)).collect())
    }
}

/// Polynomial with integer coefficients; the term map has no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPolynomial {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        if k.is_zero() {
            return Self::zero();
        }
        IntPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> IntPolynomial {
        IntPolynomial { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes a polynomial for each variable (`images[v]` for variable `v`).
    pub fn substitute(&self, images: &[IntPolynomial]) -> IntPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &(v, e) in m.exponents() {
                t = t.mul(&images[v].pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn permuted(&self, perm: &[usize]) -> IntPolynomial {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())))
    }

    pub fn max_variable(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.exponents().last().map(|&(v, _)| v)).max()
    }

    /// Terms in ascending order under `ord`.
    pub(crate) fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<(Monomial, BigInt)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        v
    }
}
