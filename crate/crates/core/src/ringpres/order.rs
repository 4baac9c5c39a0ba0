use std::cmp::Ordering;
use std::ops::Range;

use super::{Monomial, Ring};

/// Global monomial orders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Block order: degree reverse lexicographic on the inverse partners
    /// `y₁..yₙ` first, ties broken by degree reverse lexicographic on the rest.
    #[default]
    EliminateInverses,
    /// Degree reverse lexicographic on the full alphabet.
    DegRevLex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MonomialOrder {
    kind: TermOrder,
    partners: Range<usize>,
}

impl MonomialOrder {
    pub(crate) fn new(kind: TermOrder, ring: &Ring) -> Self {
        let n = ring.laurent_count();
        MonomialOrder { kind, partners: n..2 * n }
    }

    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            TermOrder::DegRevLex => degrevlex(a, b, |_| true),
            TermOrder::EliminateInverses => {
                let inner = |v: usize| self.partners.contains(&v);
                degrevlex(a, b, inner).then_with(|| degrevlex(a, b, |v| !inner(v)))
            }
        }
    }
}

/// Degree reverse lexicographic on the variables selected by `keep`.
fn degrevlex(a: &Monomial, b: &Monomial, keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |m: &Monomial| m.exponents().iter().filter(|(v, _)| keep(*v)).map(|&(_, e)| u64::from(e)).sum::<u64>();
    deg(a).cmp(&deg(b)).then_with(|| {
        let mut ia = a.exponents().iter().rev().filter(|(v, _)| keep(*v)).peekable();
        let mut ib = b.exponents().iter().rev().filter(|(v, _)| keep(*v)).peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => return Ordering::Equal,
                // The monomial with the smaller exponent in the last differing
                // variable is larger.
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va > vb {
                        return Ordering::Less;
                    }
                    if vb > va {
                        return Ordering::Greater;
                    }
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    ia.next();
                    ib.next();
                }
            }
        }
    })
}
