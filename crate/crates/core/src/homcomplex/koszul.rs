use num_bigint::BigInt;
use num_integer::Integer;

use super::{ChainComplex, ComplexError};
use crate::exactlinalg::{cokernel_structure, is_prime, FgAbelianGroup, IntMatrix};

/// Koszul complex of commuting endomorphisms `gs` of `M = ℤ^rank`.
///
/// `K^k = Λ^k(ℤ^r) ⊗ M` in degrees `0..=r`, with basis blocks indexed by the
/// `k`-subsets of `0..r` in lexicographic order and
/// `d(e_S ⊗ v) = Σ_{j∉S} (−1)^{#{s∈S : s<j}} e_{S∪{j}} ⊗ g_j v`.
pub fn koszul_complex(gs: &[IntMatrix], rank: usize) -> Result<ChainComplex, ComplexError> {
    for (index, g) in gs.iter().enumerate() {
        if g.rows() != rank || g.cols() != rank {
            return Err(ComplexError::NotSquare { index, rows: g.rows(), cols: g.cols(), rank });
        }
    }
    for i in 0..gs.len() {
        for j in i + 1..gs.len() {
            if &gs[i] * &gs[j] != &gs[j] * &gs[i] {
                return Err(ComplexError::NonCommuting(i, j));
            }
        }
    }
    let r = gs.len();
    let subsets: Vec<Vec<u32>> = (0..=r).map(|k| subsets_of_size(r, k)).collect();
    let ranks: Vec<usize> = subsets.iter().map(|s| s.len() * rank).collect();
    let mut differentials = Vec::with_capacity(r);
    for k in 0..r {
        let (from, to) = (&subsets[k], &subsets[k + 1]);
        let mut d = IntMatrix::zeros(to.len() * rank, from.len() * rank);
        for (col, &s) in from.iter().enumerate() {
            for (j, g) in gs.iter().enumerate() {
                let bit = 1u32 << j;
                if s & bit != 0 {
                    continue;
                }
                let row = to.binary_search(&(s | bit)).expect("superset enumerated");
                let below = (s & (bit - 1)).count_ones();
                let block = if below % 2 == 0 { g.clone() } else { g.negated() };
                d.set_block(row * rank, col * rank, &block);
            }
        }
        differentials.push(d);
    }
    ChainComplex::new(0, ranks, differentials)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// `M / (g₁M + … + g_rM)`, the expected top Koszul cohomology.
pub fn top_koszul_quotient(gs: &[IntMatrix], rank: usize) -> FgAbelianGroup {
    let mut rel = IntMatrix::zeros(rank, 0);
    for g in gs {
        rel = rel.hstack(g);
    }
    cokernel_structure(&rel).structure()
}

/// One degree of the long exact sequence
/// `H^{i−1}(K) →p H^{i−1}(K) → H^i(K,p) → H^i(K) →p H^i(K)`.
#[derive(Clone, Debug)]
pub struct LesSegment {
    pub degree: i64,
    pub koszul_with_p: FgAbelianGroup,
    /// `dim_{𝔽_p}` of `coker(p)` on `H^{i−1}(K)`.
    pub cokernel_rank: usize,
    /// `dim_{𝔽_p}` of `ker(p)` on `H^i(K)`.
    pub kernel_rank: usize,
    pub exact: bool,
}

/// Checks the bookkeeping forced by exactness of the long exact sequence
/// attached to `K(gs, p) = Cone(×p on K(gs))[−1]`: each `H^i(K(gs,p))` is an
/// extension of `ker(p | H^i K)` by `coker(p | H^{i−1} K)`, so it is finite of
/// order `p^{a+b}`, has exponent dividing `p²` and between `max(a,b)` and
/// `a+b` cyclic factors.
pub fn long_exact_sequence_check(gs: &[IntMatrix], rank: usize, p: u64) -> Result<Vec<LesSegment>, ComplexError> {
    if !is_prime(p) {
        return Err(ComplexError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let k = koszul_complex(gs, rank)?;
    let mut with_p: Vec<IntMatrix> = gs.to_vec();
    with_p.push(IntMatrix::identity(rank).scaled(&pb));
    let kp = koszul_complex(&with_p, rank)?;
    let mut out = Vec::new();
    for i in kp.start() - 1..=kp.end() + 1 {
        let prev = k.homology(i - 1);
        let here = k.homology(i);
        let middle = kp.homology(i);
        let a = prev.dim_mod_p(&pb);
        let b = here.invariant_factors.iter().filter(|d| d.is_multiple_of(&pb)).count();
        let order_ok = middle.rank == 0 && middle.torsion_order() == num_traits::pow(pb.clone(), a + b);
        let exp_ok = (&pb * &pb).is_multiple_of(&middle.exponent());
        let count = middle.invariant_factors.len();
        let count_ok = count >= a.max(b) && count <= a + b;
        out.push(LesSegment {
            degree: i,
            koszul_with_p: middle,
            cokernel_rank: a,
            kernel_rank: b,
            exact: order_ok && exp_ok && count_ok,
        });
    }
    Ok(out)
}
