use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{column_basis, kernel_basis, snf, solve, IntMatrix, LinalgError};

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with
/// `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
///
/// When `presentation` is set, the group is `ℤ^rows / column-span`, and
/// element coordinates refer to those `rows` generators. Otherwise elements
/// are given in the canonical coordinates: `rank` integers followed by one
/// residue per invariant factor.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub presentation: Option<IntMatrix>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, invariant_factors: Vec::new(), presentation: None }
    }

    /// `ℤ^rank ⊕ ⊕ ℤ/cᵢ` for arbitrary cyclic orders `cᵢ` (zeros count as free
    /// factors, units vanish), normalized into an invariant-factor chain.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigInt]) -> Self {
        let diag = IntMatrix::diagonal(orders);
        let g = cokernel_structure(&diag);
        FgAbelianGroup { rank: rank + g.rank, invariant_factors: g.invariant_factors, presentation: None }
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self.rank == other.rank && self.invariant_factors == other.invariant_factors
    }

    /// Structure only, dropping any presentation.
    pub fn structure(&self) -> FgAbelianGroup {
        FgAbelianGroup {
            rank: self.rank,
            invariant_factors: self.invariant_factors.clone(),
            presentation: None,
        }
    }

    /// Number of coordinates an element of this group is written in.
    pub fn generator_count(&self) -> usize {
        match &self.presentation {
            Some(p) => p.rows(),
            None => self.rank + self.invariant_factors.len(),
        }
    }

    /// Smallest `n ≥ 1` with `n·g = 0`, or infinite.
    pub fn element_order(&self, g: &[BigInt]) -> Result<Order, LinalgError> {
        if g.len() != self.generator_count() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.generator_count(),
                found: g.len(),
            });
        }
        match &self.presentation {
            None => {
                if g[..self.rank].iter().any(|x| !x.is_zero()) {
                    return Ok(Order::Infinite);
                }
                let mut order = BigInt::one();
                for (x, d) in g[self.rank..].iter().zip(&self.invariant_factors) {
                    order = order.lcm(&(d / x.gcd(d)));
                }
                Ok(Order::Finite(order))
            }
            Some(p) => {
                let sf = snf(p);
                let y = sf.u.apply(g);
                let diag = sf.diagonal();
                let mut order = BigInt::one();
                for (k, yk) in y.iter().enumerate() {
                    let d = diag.get(k).cloned().unwrap_or_default();
                    if d.is_zero() {
                        if !yk.is_zero() {
                            return Ok(Order::Infinite);
                        }
                    } else {
                        order = order.lcm(&(&d / yk.gcd(&d)));
                    }
                }
                Ok(Order::Finite(order))
            }
        }
    }

    /// True iff multiplication by the prime `p` is injective, i.e. no invariant
    /// factor is divisible by `p`.
    pub fn multiplication_injective(&self, p: &BigInt) -> bool {
        self.invariant_factors.iter().all(|d| !d.is_multiple_of(p))
    }

    /// Order of `G / pG` as a power of p: `rank + #{dᵢ : p | dᵢ}`.
    pub fn dim_mod_p(&self, p: &BigInt) -> usize {
        self.rank + self.invariant_factors.iter().filter(|d| d.is_multiple_of(p)).count()
    }

    /// `G[p] = {g : p·g = 0}` has order `p^{#{i : p | dᵢ}}`; returned as that order.
    pub fn p_torsion_order(&self, p: &BigInt) -> BigInt {
        let k = self.invariant_factors.iter().filter(|d| d.is_multiple_of(p)).count();
        num_traits::pow(p.clone(), k)
    }

    /// Exponent of the torsion subgroup (largest invariant factor, 1 if none).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.is_isomorphic(other)
    }
}

impl Eq for FgAbelianGroup {}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ℤ^rows / column-span(a)`; columns of `a` are relations.
pub fn cokernel_structure(a: &IntMatrix) -> FgAbelianGroup {
    let map = CokernelMap::new(a);
    let mut g = map.group().clone();
    g.presentation = Some(a.clone());
    g
}

/// Coordinates on `ℤ^rows / column-span(a)` fixed by the Smith transform.
///
/// `coordinates` sends a vector of `ℤ^rows` to canonical coordinates: first
/// the free part, then one residue per invariant factor in `[0, dᵢ)`.
#[derive(Clone, Debug)]
pub struct CokernelMap {
    group: FgAbelianGroup,
    /// Rows of the Smith `u` that survive, free rows first then torsion rows.
    projection: IntMatrix,
    /// Matching columns of `u⁻¹`: preimages of the canonical generators.
    lifts: IntMatrix,
    moduli: Vec<Option<BigInt>>,
}

impl CokernelMap {
    pub fn new(a: &IntMatrix) -> Self {
        let sf = snf(a);
        let diag = sf.diagonal();
        let mut free_rows = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut factors = Vec::new();
        for k in 0..a.rows() {
            match diag.get(k) {
                Some(d) if d.is_zero() => free_rows.push(k),
                None => free_rows.push(k),
                Some(d) if d.is_one() => {}
                Some(d) => {
                    torsion_rows.push(k);
                    factors.push(d.clone());
                }
            }
        }
        let mut moduli: Vec<Option<BigInt>> = vec![None; free_rows.len()];
        moduli.extend(factors.iter().cloned().map(Some));
        let order: Vec<usize> = free_rows.iter().chain(&torsion_rows).copied().collect();
        let projection = sf.u.select_rows(&order);
        let lifts = sf.u_inv.select_columns(&order);
        let group = FgAbelianGroup { rank: free_rows.len(), invariant_factors: factors, presentation: None };
        CokernelMap { group, projection, lifts, moduli }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn source_dimension(&self) -> usize {
        self.projection.cols()
    }

    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.projection.apply(x);
        y.into_iter()
            .zip(&self.moduli)
            .map(|(v, m)| match m {
                Some(d) => v.mod_floor(d),
                None => v,
            })
            .collect()
    }

    /// A preimage in `ℤ^rows` of canonical generator `k`.
    pub fn lift(&self, k: usize) -> Vec<BigInt> {
        self.lifts.column(k)
    }

    /// Flips the sign of free coordinate `k`.
    pub fn negate_free_coordinate(&mut self, k: usize) {
        assert!(k < self.group.rank);
        self.projection.negate_row(k);
        self.lifts.negate_col(k);
    }

    /// Normalizes free-coordinate signs so that, scanning the given vectors in
    /// order, the first nonzero entry of each free coordinate is positive.
    pub fn normalize_signs(&mut self, vectors: &[Vec<BigInt>]) {
        for k in 0..self.group.rank {
            let first = vectors
                .iter()
                .map(|v| self.projection.row(k).iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>())
                .find(|c| !c.is_zero());
            if first.is_some_and(|c| c.is_negative()) {
                self.negate_free_coordinate(k);
            }
        }
    }
}

/// A homomorphism `ℤ^a / im(source) → ℤ^b / im(target)` given by a `b × a`
/// matrix on representatives.
#[derive(Clone, Debug)]
pub struct PresentedHom {
    pub source: IntMatrix,
    pub target: IntMatrix,
    pub matrix: IntMatrix,
}

impl PresentedHom {
    pub fn new(source: IntMatrix, target: IntMatrix, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.cols(), source.rows());
        assert_eq!(matrix.rows(), target.rows());
        PresentedHom { source, target, matrix }
    }

    /// Whether the matrix sends relations to relations.
    pub fn is_well_defined(&self) -> bool {
        let images = &self.matrix * &self.source;
        solve(&self.target, &images).is_some()
    }

    /// Lattice `{x : f(x) ∈ im(target)}` as a column basis.
    fn preimage_of_zero(&self) -> IntMatrix {
        let a = self.source.rows();
        let stacked = self.matrix.hstack(&self.target.negated());
        let k = kernel_basis(&stacked);
        let rows: Vec<usize> = (0..a).collect();
        column_basis(&k.select_rows(&rows))
    }

    pub fn kernel(&self) -> FgAbelianGroup {
        let basis = self.preimage_of_zero();
        let coords = solve(&basis, &self.source).expect("relations lie in the kernel lattice");
        cokernel_structure(&coords).structure()
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        cokernel_structure(&self.matrix.hstack(&self.target)).structure()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }
}
