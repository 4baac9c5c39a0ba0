//! Exact cone-intersection tests for simplicial cones, via Fourier–Motzkin
//! elimination over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// A row `a · w ≥ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Ineq {
    a: Vec<Q>,
    b: Q,
}

impl Ineq {
    /// Scale so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in &mut self.a {
                *x /= &lead;
            }
            self.b /= &lead;
        }
        self
    }
}

/// Whether `{w : a_r · w ≥ b_r for all r}` is nonempty.
fn fm_feasible(mut rows: Vec<Ineq>, vars: usize) -> bool {
    for v in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.a[v].is_positive() {
                pos.push(r);
            } else if r.a[v].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                // p.a[v] > 0, n.a[v] < 0: combine to cancel w_v.
                let (sp, sn) = (-&n.a[v], p.a[v].clone());
                let a = p.a.iter().zip(&n.a).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = &p.b * &sp + &n.b * &sn;
                rest.push(Ineq { a, b }.normalized());
            }
        }
        rest.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
        rest.dedup();
        rows = rest;
    }
    rows.iter().all(|r| !r.b.is_positive())
}

/// Solves `m · z = 0` for a rational matrix, returning for every variable its
/// expression in terms of the free variables, plus the number of free variables.
fn parametrize_kernel(m: &[Vec<Q>], n: usize) -> (Vec<Vec<Q>>, usize) {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(p, row);
        let inv = Q::one() / &a[row][col];
        for x in &mut a[row] {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let v = &a[row][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut expr = vec![vec![Q::zero(); free.len()]; n];
    for (k, &f) in free.iter().enumerate() {
        expr[f][k] = Q::one();
    }
    for (r, &p) in pivots.iter().enumerate() {
        for (k, &f) in free.iter().enumerate() {
            expr[p][k] = -a[r][f].clone();
        }
    }
    (expr, free.len())
}

/// Whether the cones spanned by the columns `left` and `right` (each linearly
/// independent) meet exactly in the cone over the rays they share.
///
/// Rays are given by index into `rays`; shared indices are the common face.
/// The intersection is a common face iff no solution of
/// `Σ aᵢ vᵢ = Σ bⱼ vⱼ` with `a, b ≥ 0` puts weight on a ray outside the
/// common face.
pub(crate) fn meet_in_common_face(rays: &[Vec<BigInt>], left: &[usize], right: &[usize]) -> bool {
    let dim = rays.first().map_or(0, |r| r.len());
    let n = left.len() + right.len();
    let eqs: Vec<Vec<Q>> = (0..dim)
        .map(|c| {
            left.iter()
                .map(|&i| Q::from_integer(rays[i][c].clone()))
                .chain(right.iter().map(|&j| -Q::from_integer(rays[j][c].clone())))
                .collect()
        })
        .collect();
    let (expr, free) = parametrize_kernel(&eqs, n);
    let nonneg: Vec<Ineq> = expr.iter().map(|e| Ineq { a: e.clone(), b: Q::zero() }).collect();
    let outside = left
        .iter()
        .enumerate()
        .filter(|(_, i)| !right.contains(i))
        .map(|(k, _)| k)
        .chain(right.iter().enumerate().filter(|(_, j)| !left.contains(j)).map(|(k, _)| left.len() + k));
    for k in outside {
        let mut rows = nonneg.clone();
        rows.push(Ineq { a: expr[k].clone(), b: Q::one() });
        if fm_feasible(rows, free) {
            return false;
        }
    }
    true
}
