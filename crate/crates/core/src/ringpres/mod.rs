//! Integer polynomials in Laurent and finite-order unit variables, strong
//! Gröbner bases over ℤ, and quotient rings read as abelian groups.
//!
//! A ring signature has `n` Laurent variables `x₁..xₙ`, each doubled by an
//! inverse partner `yᵢ` with `xᵢyᵢ − 1` in every ideal, and `s` unit variables
//! `u₁..uₛ` with `uⱼ^{ordⱼ} − 1`. Variable indices run `x` block, `y` block,
//! then `u` block.

mod field;
mod groebner;
mod order;
mod parse;
mod poly;
mod quotient;

pub use field::{standard_monomial_count, Field};
pub use groebner::{normal_form, strong_groebner, strong_groebner_with, GbOptions, GroebnerBasis, DEFAULT_STEP_BUDGET};
pub use order::TermOrder;
pub use parse::{parse_element, ParseError};
pub use poly::{IntPolynomial, Monomial};
pub use quotient::{abelian_structure, finite_generator_monomials, QuotientStructure, Staircase};

use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("Groebner computation exceeded its budget of {0} steps")]
    BudgetExceeded(usize),
    #[error("quotient is not finitely generated over Z (no unit power of {0})")]
    InfiniteStructure(String),
    #[error("unit orders must be at least 2, got {0}")]
    BadUnitOrder(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Variable alphabet of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    laurent_names: Vec<String>,
    /// `false` for a plain polynomial ring: no partner relations.
    inverses: bool,
    unit_names: Vec<String>,
    unit_orders: Vec<u64>,
}

impl Ring {
    /// `n` Laurent variables named `x1..xn` and units `u1..us`.
    pub fn new(n: usize, unit_orders: &[u64]) -> Result<Self, RingError> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        let units = (1..=unit_orders.len()).map(|j| format!("u{j}")).collect();
        Self::with_names(names, units, unit_orders)
    }

    pub fn laurent(n: usize) -> Self {
        Self::new(n, &[]).expect("no unit orders to check")
    }

    pub fn with_names(laurent_names: Vec<String>, unit_names: Vec<String>, unit_orders: &[u64]) -> Result<Self, RingError> {
        assert_eq!(unit_names.len(), unit_orders.len(), "one name per unit");
        if let Some(&o) = unit_orders.iter().find(|&&o| o < 2) {
            return Err(RingError::BadUnitOrder(o));
        }
        Ok(Ring { laurent_names, inverses: true, unit_names, unit_orders: unit_orders.to_vec() })
    }

    /// `ℤ[x₁..xₙ]` without inverses.
    pub fn polynomial(n: usize) -> Self {
        Ring { inverses: false, ..Self::laurent(n) }
    }

    pub fn has_inverses(&self) -> bool {
        self.inverses
    }

    pub fn laurent_count(&self) -> usize {
        self.laurent_names.len()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_orders.len()
    }

    pub fn unit_orders(&self) -> &[u64] {
        &self.unit_orders
    }

    pub fn var_count(&self) -> usize {
        2 * self.laurent_count() + self.unit_count()
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.laurent_count());
        i
    }

    pub fn y(&self, i: usize) -> usize {
        assert!(i < self.laurent_count());
        self.laurent_count() + i
    }

    pub fn u(&self, j: usize) -> usize {
        assert!(j < self.unit_count());
        2 * self.laurent_count() + j
    }

    pub fn is_inverse_partner(&self, var: usize) -> bool {
        (self.laurent_count()..2 * self.laurent_count()).contains(&var)
    }

    pub(crate) fn unit_order_of(&self, var: usize) -> Option<u64> {
        var.checked_sub(2 * self.laurent_count()).and_then(|j| self.unit_orders.get(j).copied())
    }

    /// Index of a named `x` or `u` variable.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.laurent_names.iter().position(|n| n == name) {
            return Some(i);
        }
        self.unit_names.iter().position(|n| n == name).map(|j| self.u(j))
    }

    /// `xᵢyᵢ − 1` and `uⱼ^{ordⱼ} − 1`.
    pub fn structural_relations(&self) -> Vec<IntPolynomial> {
        let one = IntPolynomial::one();
        let partners = if self.inverses { self.laurent_count() } else { 0 };
        let mut out: Vec<IntPolynomial> = (0..partners)
            .map(|i| IntPolynomial::from_monomial(Monomial::var(self.x(i), 1).mul(&Monomial::var(self.y(i), 1))).sub(&one))
            .collect();
        for (j, &o) in self.unit_orders.iter().enumerate() {
            let e = u32::try_from(o).expect("unit order fits u32");
            out.push(IntPolynomial::from_monomial(Monomial::var(self.u(j), e)).sub(&one));
        }
        out
    }

    /// Reduces unit exponents into `[0, ordⱼ)`.
    pub fn canonical(&self, f: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m, c) in f.terms() {
            let reduced: Vec<(usize, u32)> = m
                .exponents()
                .iter()
                .map(|&(v, e)| match self.unit_order_of(v) {
                    Some(o) => (v, (u64::from(e) % o) as u32),
                    None => (v, e),
                })
                .collect();
            out.add_term(Monomial::from_exponents(reduced), c.clone());
        }
        out
    }

    /// The Laurent monomial `∏ xᵢ^{eᵢ}` (negative exponents through partners).
    pub fn laurent_monomial(&self, exps: &[i64]) -> Monomial {
        assert_eq!(exps.len(), self.laurent_count());
        let pairs = exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| {
            let var = if e > 0 { self.x(i) } else { self.y(i) };
            (var, u32::try_from(e.unsigned_abs()).expect("exponent fits u32"))
        });
        Monomial::from_exponents(pairs.collect())
    }

    /// Inverse of a monomial, or `None` when a polynomial variable occurs.
    pub fn inverse_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let n = self.laurent_count();
        let mut pairs = Vec::new();
        for &(v, e) in m.exponents() {
            if let Some(o) = self.unit_order_of(v) {
                pairs.push((v, ((o - u64::from(e) % o) % o) as u32));
            } else if !self.inverses {
                return None;
            } else if v < n {
                pairs.push((v + n, e));
            } else {
                pairs.push((v - n, e));
            }
        }
        Some(Monomial::from_exponents(pairs))
    }

    pub fn var_name(&self, var: usize) -> String {
        let n = self.laurent_count();
        if var < n {
            self.laurent_names[var].clone()
        } else if var < 2 * n {
            format!("{}^-1", self.laurent_names[var - n])
        } else {
            self.unit_names[var - 2 * n].clone()
        }
    }

    /// Human-readable rendering, terms in descending degree-reverse-lex order.
    pub fn display<'a>(&'a self, f: &'a IntPolynomial) -> impl fmt::Display + 'a {
        PolyDisplay { ring: self, poly: f }
    }
}

struct PolyDisplay<'a> {
    ring: &'a Ring,
    poly: &'a IntPolynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(&order::MonomialOrder::new(TermOrder::DegRevLex, self.ring));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 && sign == "-" {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mon = m
                .exponents()
                .iter()
                .map(|&(v, e)| {
                    let name = self.ring.var_name(v);
                    match (e, self.ring.is_inverse_partner(v)) {
                        (1, _) => name,
                        (e, true) => format!("{}^-{e}", name.trim_end_matches("^-1")),
                        (e, false) => format!("{name}^{e}"),
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            match (abs.is_one(), mon.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mon}")?,
                (false, false) => write!(f, "{abs}*{mon}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_relations_and_names() {
        let r = Ring::new(1, &[3]).unwrap();
        let rels = r.structural_relations();
        assert_eq!(rels.len(), 2);
        assert_eq!(format!("{}", r.display(&rels[0])), "x1*x1^-1 - 1");
        assert_eq!(format!("{}", r.display(&rels[1])), "u1^3 - 1");
        assert_eq!(r.lookup("u1"), Some(2));
        assert!(Ring::new(1, &[1]).is_err());
    }

    #[test]
    fn canonical_reduces_units() {
        let r = Ring::new(0, &[2]).unwrap();
        let f = IntPolynomial::from_monomial(Monomial::var(r.u(0), 5));
        assert_eq!(r.canonical(&f), IntPolynomial::from_monomial(Monomial::var(r.u(0), 1)));
    }
}
