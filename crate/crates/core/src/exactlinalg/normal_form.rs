//! Hermite and Smith normal forms over ℤ.
//!
//! Both reductions pick the entry of minimal absolute value as pivot. The
//! transformation matrices are tracked alongside so callers can move between
//! the original coordinates and the normal-form coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form `h = u · a` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Smith normal form `s = u · a · v`, with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            let best = (r..h.rows())
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

struct SmithCalc {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[t] += k · row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_col_multiple(s, t, &-k);
    }

    /// col[t] += k · col[s]
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_col_multiple(t, s, k);
        self.v.add_col_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Brings the minimal nonzero entry of row `t` and column `t` to the pivot.
    fn refresh_pivot(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t..self.a.rows() {
            let x = &self.a[(i, t)];
            if !x.is_zero() && (self.a[best].is_zero() || x.abs() < self.a[best].abs()) {
                best = (i, t);
            }
        }
        for j in t..self.a.cols() {
            let x = &self.a[(t, j)];
            if !x.is_zero() && (self.a[best].is_zero() || x.abs() < self.a[best].abs()) {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.min_in_submatrix(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    self.refresh_pivot(t);
                    continue;
                }
                // Divisibility: fold an offending row into the pivot row and retry.
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&self.a[(t, t)]))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut calc = SmithCalc {
        a: a.clone(),
        u: IntMatrix::identity(a.rows()),
        u_inv: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
        v_inv: IntMatrix::identity(a.cols()),
    };
    calc.run();
    SmithForm { s: calc.a, u: calc.u, u_inv: calc.u_inv, v: calc.v, v_inv: calc.v_inv }
}

/// Basis of the integer kernel `{x : a·x = 0}`, as columns. The basis spans a
/// saturated sublattice.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let sf = snf(a);
    let r = sf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    sf.v.select_columns(&cols)
}

/// Integer solution `x` of `a·x = y` (columnwise for a matrix `y`), if one exists.
pub fn solve(a: &IntMatrix, y: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), y.rows(), "row mismatch in solve");
    let sf = snf(a);
    let r = sf.rank();
    let uy = &sf.u * y;
    let mut z = IntMatrix::zeros(a.cols(), y.cols());
    for i in 0..a.rows() {
        for j in 0..y.cols() {
            let v = &uy[(i, j)];
            if i >= r {
                if !v.is_zero() {
                    return None;
                }
                continue;
            }
            let (q, rem) = v.div_rem(&sf.s[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            z[(i, j)] = q;
        }
    }
    Some(&sf.v * &z)
}

/// Basis (as columns) of the lattice spanned by the columns of `g`.
pub fn column_basis(g: &IntMatrix) -> IntMatrix {
    let h = hnf(&g.transpose());
    let rows: Vec<usize> = (0..h.rank()).collect();
    h.h.select_rows(&rows).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hnf_hand_example() {
        // Row reduction by hand: R2 -= 3 R1 gives [0,-2]; negate; R1 -= R2.
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let f = hnf(&a);
        assert_eq!(f.h, m(&[vec![1, 0], vec![0, 2]]));
        assert_eq!(&f.u * &a, f.h);
        assert_eq!(f.u.determinant().abs(), BigInt::from(1));
    }

    #[test]
    fn hnf_fixed_points() {
        let id = IntMatrix::identity(3);
        let f = hnf(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);
        let z = IntMatrix::zeros(2, 3);
        let f = hnf(&z);
        assert_eq!(f.h, z);
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn snf_examples() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let f = snf(&a);
        assert_eq!(f.s, m(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(&(&f.u * &a) * &f.v, f.s);
        assert_eq!(snf(&IntMatrix::identity(3)).s, IntMatrix::identity(3));
        assert_eq!(snf(&m(&[vec![2, 0], vec![0, 3]])).s, m(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn snf_inverses_track() {
        let a = m(&[vec![3, 5, 7], vec![-2, 4, 0], vec![6, 10, 14], vec![1, 1, 1]]);
        let f = snf(&a);
        assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(4));
        assert_eq!(&f.v * &f.v_inv, IntMatrix::identity(3));
        assert_eq!(&(&f.u * &a) * &f.v, f.s);
    }

    #[test]
    fn solve_and_bases() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let y = m(&[vec![4], vec![9]]);
        assert_eq!(solve(&a, &y).unwrap(), m(&[vec![2], vec![3]]));
        assert!(solve(&a, &m(&[vec![1], vec![0]])).is_none());
        let g = m(&[vec![2, 4, 6], vec![0, 0, 0]]);
        assert_eq!(column_basis(&g), m(&[vec![2], vec![0]]));
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[vec![1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }
}
