//! Exact integer linear algebra: Hermite and Smith normal forms and the
//! structure of finitely generated abelian groups.
//!
//! Presentations put relations in columns: a matrix with `r` rows presents
//! `ℤ^r / column-span`.

mod abelian;
mod matrix;
mod normal_form;

pub use abelian::{cokernel_structure, CokernelMap, FgAbelianGroup, Order, PresentedHom};
pub use matrix::IntMatrix;
pub use normal_form::{column_basis, hnf, kernel_basis, snf, solve, HermiteForm, SmithForm};

pub(crate) use matrix::mulmod;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected a vector with {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Deterministic primality test for the small moduli used as coefficient fields.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
