use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::groebner::{reduce, Terms};
use super::{GroebnerBasis, IntPolynomial, Monomial, RingError};
use crate::exactlinalg::{CokernelMap, FgAbelianGroup, IntMatrix, LinalgError, Order};

/// Monomials outside a monomial ideal, when there are finitely many.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Staircase {
    Finite(Vec<Monomial>),
    /// No pure power of this variable lies in the ideal.
    Infinite { variable: usize },
}

/// Monomials in `var_count` variables divisible by none of `lms`, ascending
/// by degree then lexicographically.
pub(crate) fn staircase(lms: &[Monomial], var_count: usize) -> Staircase {
    if lms.iter().any(Monomial::is_one) {
        return Staircase::Finite(Vec::new());
    }
    let mut bounds = Vec::with_capacity(var_count);
    for v in 0..var_count {
        let b = lms.iter().filter(|m| m.pure_power() == Some(v)).map(|m| m.exponent(v)).min();
        match b {
            Some(b) => bounds.push(b),
            None => return Staircase::Infinite { variable: v },
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; var_count];
    collect(lms, &bounds, 0, &mut current, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    Staircase::Finite(out)
}

fn collect(lms: &[Monomial], bounds: &[u32], v: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let here = Monomial::from_exponents(current.iter().enumerate().map(|(w, &e)| (w, e)).collect());
    if lms.iter().any(|m| m.divides(&here)) {
        return;
    }
    if v == bounds.len() {
        out.push(here);
        return;
    }
    for e in 0..bounds[v] {
        current[v] = e;
        let before = out.len();
        collect(lms, bounds, v + 1, current, out);
        if out.len() == before {
            break;
        }
    }
    current[v] = 0;
}

/// The staircase of the unit-leading-coefficient part of a strong basis.
///
/// When finite, these monomials generate the quotient as an abelian group.
pub fn finite_generator_monomials(gb: &GroebnerBasis) -> Staircase {
    let lms: Vec<Monomial> = gb.leading_terms().into_iter().filter(|(_, c)| c.is_one()).map(|(m, _)| m).collect();
    staircase(&lms, gb.ring().var_count())
}

/// The quotient ring `R / I` as a finitely generated abelian group.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    basis: GroebnerBasis,
    generators: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: IntMatrix,
    map: CokernelMap,
}

impl QuotientStructure {
    pub fn group(&self) -> &FgAbelianGroup {
        self.map.group()
    }

    pub fn generator_monomials(&self) -> &[Monomial] {
        &self.generators
    }

    /// Relation vectors as columns, rows indexed by the generator monomials.
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Coefficients of the normal form on the generator monomials.
    pub fn normal_form_vector(&self, f: &IntPolynomial) -> Vec<BigInt> {
        let nf = self.basis.normal_form(f);
        let mut v = vec![BigInt::zero(); self.generators.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Canonical group coordinates of the class of `f`.
    pub fn coordinates(&self, f: &IntPolynomial) -> Vec<BigInt> {
        self.map.coordinates(&self.normal_form_vector(f))
    }

    pub fn element_order(&self, f: &IntPolynomial) -> Result<Order, LinalgError> {
        self.group().element_order(&self.coordinates(f))
    }
}

/// Relations are the unit-part reductions of `m·g` for each basis element `g`
/// with non-unit leading coefficient and each `m` keeping `m·LM(g)` among the
/// generators.
pub fn abelian_structure(gb: &GroebnerBasis) -> Result<QuotientStructure, RingError> {
    let generators = match finite_generator_monomials(gb) {
        Staircase::Finite(g) => g,
        Staircase::Infinite { variable } => return Err(RingError::InfiniteStructure(gb.ring().var_name(variable))),
    };
    let index: HashMap<Monomial, usize> = generators.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let ord = gb.monomial_order();
    let units: Vec<&Terms> = gb.elements().iter().filter(|g| g.last().is_some_and(|t| t.1.is_one())).collect();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for g in gb.elements() {
        let (lm, lc) = g.last().expect("nonzero");
        if lc.is_one() {
            continue;
        }
        for m in &generators {
            if !lm.divides(m) {
                continue;
            }
            let shift = lm.quotient_into(m);
            let shifted: Terms = g.iter().map(|(n, c)| (n.mul(&shift), c.clone())).collect();
            let r = reduce(shifted, &units, &ord);
            let mut col = vec![BigInt::zero(); generators.len()];
            for (n, c) in r {
                col[index[&n]] = c;
            }
            columns.push(col);
        }
    }
    let relations = IntMatrix::from_columns(generators.len(), &columns);
    let map = CokernelMap::new(&relations);
    Ok(QuotientStructure { basis: gb.clone(), generators, index, relations, map })
}
