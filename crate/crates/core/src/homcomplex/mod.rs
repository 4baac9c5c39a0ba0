//! Bounded cochain complexes of finite free ℤ-modules.
//!
//! Indexing is cohomological: `d^i : C^i → C^{i+1}`, stored as a matrix with
//! `rank C^{i+1}` rows and `rank C^i` columns. Shift: `C[k]^i = C^{i+k}` with
//! differential `(−1)^k d`. Cone of `φ : C → D`: `Cone^i = C^{i+1} ⊕ D^i` with
//! differential `(c, e) ↦ (−d_C c, φ c + d_D e)`.

mod koszul;

pub use koszul::{koszul_complex, long_exact_sequence_check, top_koszul_quotient, LesSegment};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactlinalg::{cokernel_structure, is_prime, snf, FgAbelianGroup, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d^{degree} ∘ d^{prev} is not zero", prev = degree - 1)]
    NotAComplex { degree: i64 },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("endomorphisms {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("endomorphism {index} is {rows}x{cols}, expected {rank}x{rank}")]
    NotSquare { index: usize, rows: usize, cols: usize, rank: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    start: i64,
    ranks: Vec<usize>,
    /// `differentials[k]` maps degree `start + k` to `start + k + 1`.
    differentials: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Complex with `C^{start+k}` of rank `ranks[k]`. Checks shapes and `d∘d = 0`.
    pub fn new(start: i64, ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        assert_eq!(differentials.len() + 1, ranks.len().max(1), "need one differential between consecutive groups");
        for (k, d) in differentials.iter().enumerate() {
            let expected = (ranks[k + 1], ranks[k]);
            if (d.rows(), d.cols()) != expected {
                return Err(ComplexError::Shape {
                    degree: start + k as i64,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        for k in 1..differentials.len() {
            if !(&differentials[k] * &differentials[k - 1]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: start + k as i64 });
            }
        }
        Ok(ChainComplex { start, ranks, differentials })
    }

    /// A single module of the given rank in degree `degree`.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        ChainComplex { start: degree, ranks: vec![rank], differentials: Vec::new() }
    }

    /// Lowest degree with a (possibly zero) stored group.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Highest stored degree.
    pub fn end(&self) -> i64 {
        self.start + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.end()
    }

    pub fn rank_at(&self, i: i64) -> usize {
        if i < self.start || i > self.end() {
            0
        } else {
            self.ranks[(i - self.start) as usize]
        }
    }

    /// `d^i`, as a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, i: i64) -> IntMatrix {
        if i >= self.start && i < self.end() {
            self.differentials[(i - self.start) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank_at(i + 1), self.rank_at(i))
        }
    }

    /// `H^i = ker d^i / im d^{i−1}`; zero outside the stored range.
    pub fn homology(&self, i: i64) -> FgAbelianGroup {
        let n = self.rank_at(i);
        if n == 0 {
            return FgAbelianGroup::trivial();
        }
        let out = self.differential(i);
        let incoming = self.differential(i - 1);
        let sf = snf(&out);
        let r = sf.rank();
        // Image of d^{i-1} in the coordinates of the kernel basis (the last
        // n − r columns of v).
        let coords = &sf.v_inv * &incoming;
        let keep: Vec<usize> = (r..n).collect();
        let relations = coords.select_rows(&keep);
        cokernel_structure(&relations).structure()
    }

    /// Homology in every stored degree, paired with the degree.
    pub fn all_homology(&self) -> Vec<(i64, FgAbelianGroup)> {
        self.degrees().map(|i| (i, self.homology(i))).collect()
    }

    pub fn shift(&self, k: i64) -> ChainComplex {
        let sign = if k.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
        ChainComplex {
            start: self.start - k,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(|d| d.scaled(&sign)).collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|i| self.homology(i).is_trivial())
    }
}

/// Degreewise map `C → D` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// `component(i)` must be a `rank D^i × rank C^i` matrix.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        mut component: impl FnMut(i64) -> IntMatrix,
    ) -> Result<Self, ComplexError> {
        let lo = source.start().min(target.start());
        let hi = source.end().max(target.end());
        let mut components = Vec::new();
        for i in lo..=hi {
            let c = component(i);
            let expected = (target.rank_at(i), source.rank_at(i));
            if (c.rows(), c.cols()) != expected {
                return Err(ComplexError::Shape { degree: i, expected, found: (c.rows(), c.cols()) });
            }
            components.push(c);
        }
        let map = ChainMap { source, target, lo, components };
        for i in lo..hi {
            let left = &map.target.differential(i) * &map.component(i);
            let right = &map.component(i + 1) * &map.source.differential(i);
            if left != right {
                return Err(ComplexError::NotAChainMap { degree: i });
            }
        }
        Ok(map)
    }

    /// Multiplication by the integer `k` on `c`.
    pub fn scalar(c: &ChainComplex, k: &BigInt) -> ChainMap {
        let c2 = c.clone();
        ChainMap::new(c.clone(), c.clone(), |i| IntMatrix::identity(c2.rank_at(i)).scaled(k))
            .expect("scalar multiplication is a chain map")
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        Self::scalar(c, &BigInt::one())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, i: i64) -> IntMatrix {
        let idx = i - self.lo;
        if idx >= 0 && (idx as usize) < self.components.len() {
            self.components[idx as usize].clone()
        } else {
            IntMatrix::zeros(self.target.rank_at(i), self.source.rank_at(i))
        }
    }
}

pub fn mapping_cone(phi: &ChainMap) -> ChainComplex {
    let (c, d) = (&phi.source, &phi.target);
    let lo = (c.start() - 1).min(d.start());
    let hi = (c.end() - 1).max(d.end());
    let ranks: Vec<usize> = (lo..=hi).map(|i| c.rank_at(i + 1) + d.rank_at(i)).collect();
    let mut differentials = Vec::new();
    for i in lo..hi {
        let (c1, d0) = (c.rank_at(i + 1), d.rank_at(i));
        let (c2, d1) = (c.rank_at(i + 2), d.rank_at(i + 1));
        let mut m = IntMatrix::zeros(c2 + d1, c1 + d0);
        m.set_block(0, 0, &c.differential(i + 1).negated());
        m.set_block(c2, 0, &phi.component(i + 1));
        m.set_block(c2, c1, &d.differential(i));
        differentials.push(m);
    }
    ChainComplex::new(lo, ranks, differentials).expect("cone of a chain map is a complex")
}

/// Whether multiplication by the prime `p` is injective on `g`.
pub fn mult_injectivity(g: &FgAbelianGroup, p: u64) -> Result<bool, ComplexError> {
    if !is_prime(p) {
        return Err(ComplexError::NotPrime(p));
    }
    Ok(g.multiplication_injective(&BigInt::from(p)))
}

/// Checks `d∘d = 0` on a complex assembled from raw parts; used by property tests.
pub fn composes_to_zero(c: &ChainComplex) -> bool {
    (c.start()..c.end()).all(|i| (&c.differential(i + 1) * &c.differential(i)).is_zero())
}
