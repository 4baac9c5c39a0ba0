//! Buchberger's algorithm over ℚ and 𝔽_p, used to count standard monomials
//! independently of the integer engine.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::order::MonomialOrder;
use super::quotient::{staircase, Staircase};
use super::{IntPolynomial, Monomial, Ring, RingError, TermOrder};
use crate::exactlinalg::{is_prime, mod_inverse, mulmod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Fp {
    v: u64,
    p: u64,
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: ((u128::from(self.v) + u128::from(o.v)) % u128::from(self.p)) as u64, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Self {
        Fp { v: mod_inverse(self.v, self.p), p: self.p }
    }
}

type Poly<K> = Vec<(Monomial, K)>;

/// Leading term is last.
fn axpy<K: Scalar>(f: &Poly<K>, k: &K, m: &Monomial, g: &Poly<K>, ord: &MonomialOrder) -> Poly<K> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted: Poly<K> = g.iter().map(|(n, c)| (n.mul(m), c.mul(k))).collect();
    while i < f.len() || j < shifted.len() {
        let step = match (f.get(i), shifted.get(j)) {
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
            (None, None) => unreachable!(),
        };
        match step {
            Ordering::Less => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(shifted[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = f[i].1.add(&shifted[j].1);
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn monic<K: Scalar>(mut f: Poly<K>) -> Poly<K> {
    if let Some(lc) = f.last().map(|t| t.1.inv()) {
        for t in &mut f {
            t.1 = t.1.mul(&lc);
        }
    }
    f
}

fn reduce<K: Scalar>(mut f: Poly<K>, basis: &[Poly<K>], ord: &MonomialOrder) -> Poly<K> {
    let mut rem = Vec::new();
    while let Some((m, c)) = f.last().cloned() {
        match basis.iter().find(|g| g.last().expect("nonzero").0.divides(&m)) {
            Some(g) => {
                let shift = g.last().expect("nonzero").0.quotient_into(&m);
                f = axpy(&f, &c.neg(), &shift, g, ord);
            }
            None => rem.push(f.pop().expect("nonempty")),
        }
    }
    rem.reverse();
    rem
}

fn buchberger<K: Scalar>(gens: Vec<Poly<K>>, ord: &MonomialOrder, budget: usize) -> Result<Vec<Poly<K>>, RingError> {
    let mut basis: Vec<Poly<K>> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, ord);
        if !r.is_empty() {
            basis.push(monic(r));
        }
    }
    let lm = |basis: &[Poly<K>], i: usize| basis[i].last().expect("nonzero").0.clone();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((lm(&basis, i).lcm(&lm(&basis, j)), i, j));
            pending.insert((i, j));
        }
    }
    let mut steps = 0;
    while !pairs.is_empty() {
        steps += 1;
        if steps > budget {
            return Err(RingError::BudgetExceeded(budget));
        }
        let pick = (0..pairs.len()).min_by(|&a, &b| ord.cmp(&pairs[a].0, &pairs[b].0)).expect("nonempty");
        let (l, i, j) = pairs.swap_remove(pick);
        pending.remove(&(i, j));
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && !pending.contains(&key(i, k)) && !pending.contains(&key(j, k)) && lm(&basis, k).divides(&l)
        });
        if chain {
            continue;
        }
        let (si, sj) = (mi.quotient_into(&l), mj.quotient_into(&l));
        let fi: Poly<K> = basis[i].iter().map(|(n, c)| (n.mul(&si), c.clone())).collect();
        let one = basis[j].last().expect("nonzero").1.clone();
        let s = axpy(&fi, &one.neg(), &sj, &basis[j], ord);
        let r = reduce(s, &basis, ord);
        if !r.is_empty() {
            let k = basis.len();
            basis.push(monic(r));
            let new = lm(&basis, k);
            for i in 0..k {
                pairs.push((lm(&basis, i).lcm(&new), i, k));
                pending.insert((i, k));
            }
        }
    }
    Ok(basis)
}

/// `dim_K K[vars]/(gens + structural relations)` when finite, otherwise the
/// staircase's infinite direction.
pub fn standard_monomial_count(ring: &Ring, gens: &[IntPolynomial], field: Field, order: TermOrder) -> Result<Staircase, RingError> {
    let ord = MonomialOrder::new(order, ring);
    let all: Vec<IntPolynomial> = ring.structural_relations().into_iter().chain(gens.iter().cloned()).collect();
    let budget = super::DEFAULT_STEP_BUDGET;
    let lms: Vec<Monomial> = match field {
        Field::Rationals => {
            let polys = all
                .iter()
                .map(|g| g.sorted_terms(&ord).into_iter().map(|(m, c)| (m, BigRational::from_integer(c))).collect())
                .collect();
            buchberger::<BigRational>(polys, &ord, budget)?.iter().map(|g| g.last().expect("nonzero").0.clone()).collect()
        }
        Field::Prime(p) => {
            if !is_prime(p) {
                return Err(RingError::NotPrime(p));
            }
            let modp = |c: BigInt| c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64");
            let polys = all
                .iter()
                .map(|g| {
                    g.sorted_terms(&ord)
                        .into_iter()
                        .map(|(m, c)| (m, Fp { v: modp(c), p }))
                        .filter(|(_, c)| c.v != 0)
                        .collect()
                })
                .collect();
            buchberger::<Fp>(polys, &ord, budget)?.iter().map(|g| g.last().expect("nonzero").0.clone()).collect()
        }
    };
    if lms.iter().any(Monomial::is_one) {
        return Ok(Staircase::Finite(Vec::new()));
    }
    Ok(staircase(&lms, ring.var_count()))
}
