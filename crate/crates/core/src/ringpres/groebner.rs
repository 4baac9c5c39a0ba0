//! Strong Gröbner bases over ℤ.
//!
//! Polynomials are kept as term vectors sorted ascending under the term
//! order, so the leading term is the last entry. Every basis element is
//! stored with a positive leading coefficient.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use super::{IntPolynomial, Monomial, Ring, RingError, TermOrder};

pub const DEFAULT_STEP_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    pub order: TermOrder,
    /// Maximum number of critical pairs examined before giving up.
    pub max_steps: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { order: TermOrder::default(), max_steps: DEFAULT_STEP_BUDGET }
    }
}

pub(crate) type Terms = Vec<(Monomial, BigInt)>;

fn lead(f: &Terms) -> &(Monomial, BigInt) {
    f.last().expect("nonzero polynomial")
}

/// `f − k · m · g`, merging two ascending term lists.
fn sub_scaled(f: &Terms, k: &BigInt, m: &Monomial, g: &Terms, ord: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut gi = g.iter().map(|(n, c)| (n.mul(m), -(c * k))).peekable();
    let mut fi = f.iter().cloned().peekable();
    loop {
        let step = match (fi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
        };
        match step {
            Ordering::Less => out.push(fi.next().expect("peeked")),
            Ordering::Greater => out.push(gi.next().expect("peeked")),
            Ordering::Equal => {
                let (m, a) = fi.next().expect("peeked");
                let (_, b) = gi.next().expect("peeked");
                let c = a + b;
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

fn scaled(f: &Terms, k: &BigInt, m: &Monomial) -> Terms {
    f.iter().map(|(n, c)| (n.mul(m), c * k)).collect()
}

fn add(f: &Terms, g: &Terms, ord: &MonomialOrder) -> Terms {
    sub_scaled(f, &-BigInt::one(), &Monomial::one(), g, ord)
}

/// Full reduction of `f` by `basis`: each term is reduced by the divisor with
/// the smallest leading coefficient, leaving a remainder in `[0, lc)`.
pub(crate) fn reduce(f: Terms, basis: &[&Terms], ord: &MonomialOrder) -> Terms {
    let mut f = f;
    let mut rem: Terms = Vec::new();
    while let Some((m, c)) = f.last().cloned() {
        let best = basis
            .iter()
            .filter(|g| lead(g).0.divides(&m))
            .min_by(|a, b| lead(a).1.cmp(&lead(b).1));
        let Some(g) = best else {
            rem.push(f.pop().expect("nonempty"));
            continue;
        };
        let lc = &lead(g).1;
        let r = c.mod_floor(lc);
        let q = (&c - &r) / lc;
        if q.is_zero() {
            rem.push(f.pop().expect("nonempty"));
            continue;
        }
        let shift = lead(g).0.quotient_into(&m);
        f = sub_scaled(&f, &q, &shift, g, ord);
        if !r.is_zero() {
            rem.push(f.pop().expect("remainder term stays on top"));
        }
    }
    rem.reverse();
    rem
}

fn normalize_sign(mut f: Terms) -> Terms {
    if f.last().is_some_and(|t| t.1.is_negative()) {
        for t in &mut f {
            t.1 = -std::mem::take(&mut t.1);
        }
    }
    f
}

/// The S-polynomial of `f` and `g`, and their G-polynomial when neither
/// leading coefficient divides the other.
pub(crate) fn critical_polys(f: &Terms, g: &Terms, ord: &MonomialOrder) -> (Terms, Option<Terms>) {
    let (mf, cf) = lead(f);
    let (mg, cg) = lead(g);
    let m = mf.lcm(mg);
    let (sf, sg) = (mf.quotient_into(&m), mg.quotient_into(&m));
    let c = cf.lcm(cg);
    let s = sub_scaled(&scaled(f, &(&c / cf), &sf), &(&c / cg), &sg, g, ord);
    let gpoly = if cg.is_multiple_of(cf) || cf.is_multiple_of(cg) {
        None
    } else {
        let e = cf.extended_gcd(cg);
        Some(add(&scaled(f, &e.x, &sf), &scaled(g, &e.y, &sg), ord))
    };
    (s, gpoly)
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    elements: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub(crate) fn monomial_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, &self.ring)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> Vec<IntPolynomial> {
        self.elements.iter().map(|t| IntPolynomial::from_terms(t.iter().cloned())).collect()
    }

    /// Leading monomial and coefficient of each element.
    pub fn leading_terms(&self) -> Vec<(Monomial, BigInt)> {
        self.elements.iter().map(|t| lead(t).clone()).collect()
    }

    pub(crate) fn elements(&self) -> &[Terms] {
        &self.elements
    }

    pub fn normal_form(&self, f: &IntPolynomial) -> IntPolynomial {
        let ord = self.monomial_order();
        let basis: Vec<&Terms> = self.elements.iter().collect();
        IntPolynomial::from_terms(reduce(f.sorted_terms(&ord), &basis, &ord))
    }

    pub fn contains(&self, f: &IntPolynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|t| t.len() == 1 && lead(t).0.is_one() && lead(t).1.is_one())
    }

    /// All S- and G-polynomials of pairs of basis elements.
    pub fn critical_polynomials(&self) -> Vec<IntPolynomial> {
        let ord = self.monomial_order();
        let mut out = Vec::new();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let (s, g) = critical_polys(&self.elements[i], &self.elements[j], &ord);
                out.push(IntPolynomial::from_terms(s));
                out.extend(g.map(IntPolynomial::from_terms));
            }
        }
        out
    }
}

/// Strong Gröbner basis of the ideal generated by `gens` together with the
/// ring's structural relations.
pub fn strong_groebner(ring: &Ring, gens: &[IntPolynomial]) -> Result<GroebnerBasis, RingError> {
    strong_groebner_with(ring, gens, GbOptions::default())
}

pub fn normal_form(gb: &GroebnerBasis, f: &IntPolynomial) -> IntPolynomial {
    gb.normal_form(f)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ord: MonomialOrder,
    basis: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    done: HashSet<(usize, usize)>,
    todo: Vec<Terms>,
    steps: usize,
    budget: usize,
}

impl Builder {
    fn active_refs(&self) -> Vec<&Terms> {
        self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(t, _)| t).collect()
    }

    fn insert(&mut self, f: Terms) {
        let h = normalize_sign(reduce(f, &self.active_refs(), &self.ord));
        if h.is_empty() {
            return;
        }
        let k = self.basis.len();
        let (hm, hc) = lead(&h).clone();
        for i in 0..k {
            if !self.active[i] {
                continue;
            }
            let (m, c) = lead(&self.basis[i]);
            if hm.divides(m) && c.is_multiple_of(&hc) {
                self.active[i] = false;
                self.todo.push(self.basis[i].clone());
            }
        }
        self.basis.push(h);
        self.active.push(true);
        for i in 0..k {
            if self.active[i] {
                let lcm = lead(&self.basis[i]).0.lcm(&hm);
                self.pairs.push(Pair { i, j: k, lcm });
            }
        }
    }

    fn drain_todo(&mut self) {
        while let Some(f) = self.todo.pop() {
            self.insert(f);
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            self.ord.cmp(&p.lcm, &q.lcm).then((p.j, p.i).cmp(&(q.j, q.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn chain_skips(&self, p: &Pair) -> bool {
        let (ci, cj) = (&lead(&self.basis[p.i]).1, &lead(&self.basis[p.j]).1);
        let c = ci.lcm(cj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        (0..self.basis.len()).any(|k| {
            k != p.i
                && k != p.j
                && self.active[k]
                && lead(&self.basis[k]).0.divides(&p.lcm)
                && c.is_multiple_of(&lead(&self.basis[k]).1)
                && self.done.contains(&key(p.i, k))
                && self.done.contains(&key(p.j, k))
        })
    }

    fn run(&mut self) -> Result<(), RingError> {
        self.drain_todo();
        while let Some(p) = self.pop_pair() {
            if !self.active[p.i] || !self.active[p.j] {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(RingError::BudgetExceeded(self.budget));
            }
            let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
            let (mf, cf) = lead(f);
            let (mg, cg) = lead(g);
            let product = cf.is_one() && cg.is_one() && mf.is_coprime(mg);
            let chain = !product && self.chain_skips(&p);
            let (s, gpoly) = critical_polys(f, g, &self.ord);
            if let Some(gp) = gpoly {
                self.todo.push(gp);
            }
            if !product && !chain {
                self.todo.push(s);
            }
            self.done.insert((p.i, p.j));
            self.drain_todo();
        }
        Ok(())
    }

    /// Critical polynomials of the active basis that fail to reduce to zero.
    fn audit(&self) -> Vec<Terms> {
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&i| self.active[i]).collect();
        let refs = self.active_refs();
        let mut bad = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let (s, g) = critical_polys(&self.basis[i], &self.basis[j], &self.ord);
                for f in std::iter::once(s).chain(g) {
                    let r = reduce(f, &refs, &self.ord);
                    if !r.is_empty() {
                        bad.push(r);
                    }
                }
            }
        }
        bad
    }

    /// Drops elements whose leading term is a strong multiple of another's
    /// and tail-reduces the rest.
    fn finish(self) -> Vec<Terms> {
        let mut kept: Vec<Terms> = Vec::new();
        let live: Vec<&Terms> = self.active_refs();
        for (k, f) in live.iter().enumerate() {
            let (m, c) = lead(f);
            let redundant = live.iter().enumerate().any(|(l, g)| {
                let (n, d) = lead(g);
                l != k && n.divides(m) && c.is_multiple_of(d) && (n != m || d != c || l < k)
            });
            if !redundant {
                kept.push((*f).clone());
            }
        }
        for k in 0..kept.len() {
            let mut f = kept[k].clone();
            let top = f.pop().expect("nonzero");
            let others: Vec<&Terms> = kept.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g).collect();
            let mut tail = reduce(f, &others, &self.ord);
            tail.push(top);
            kept[k] = tail;
        }
        kept.sort_by(|a, b| self.ord.cmp(&lead(a).0, &lead(b).0).then(lead(a).1.cmp(&lead(b).1)));
        kept
    }
}

pub fn strong_groebner_with(ring: &Ring, gens: &[IntPolynomial], opts: GbOptions) -> Result<GroebnerBasis, RingError> {
    let ord = MonomialOrder::new(opts.order, ring);
    let mut todo: Vec<Terms> = ring.structural_relations().iter().map(|g| g.sorted_terms(&ord)).collect();
    todo.extend(gens.iter().rev().map(|g| g.sorted_terms(&ord)));
    todo.reverse();
    let mut b = Builder {
        ord,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        done: HashSet::new(),
        todo,
        steps: 0,
        budget: opts.max_steps,
    };
    loop {
        b.run()?;
        let bad = b.audit();
        if bad.is_empty() {
            break;
        }
        b.todo = bad;
    }
    let elements = b.finish();
    Ok(GroebnerBasis { ring: ring.clone(), order: opts.order, elements })
}
