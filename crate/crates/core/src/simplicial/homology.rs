use std::collections::HashMap;

use num_bigint::BigInt;

use super::{vertices_of, Mask, SimplicialComplex, SimplicialError};
use crate::exactlinalg::{is_prime, FgAbelianGroup, IntMatrix};
use crate::homcomplex::ChainComplex;

/// Coefficient ring for simplicial homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    pub fn label(&self) -> String {
        match self {
            Coefficients::Integers => "Z".into(),
            Coefficients::Rationals => "Q".into(),
            Coefficients::Prime(p) => format!("F{p}"),
        }
    }

    fn check(self) -> Result<Self, SimplicialError> {
        match self {
            Coefficients::Prime(p) if !is_prime(p) => Err(SimplicialError::NotPrime(p)),
            c => Ok(c),
        }
    }
}

/// One reduced homology group: a ℤ-module, or a dimension over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyGroup {
    Integral(FgAbelianGroup),
    Dimension(usize),
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        match self {
            HomologyGroup::Integral(g) => g.is_trivial(),
            HomologyGroup::Dimension(d) => *d == 0,
        }
    }
}

/// Faces grouped by size: `layers[k]` holds the faces with `k` vertices
/// (dimension `k − 1`), each sorted.
fn layers(k: &SimplicialComplex) -> Vec<Vec<Mask>> {
    if k.is_void() {
        return Vec::new();
    }
    let top = (k.dim() + 1) as usize;
    let mut out = vec![Vec::new(); top + 1];
    for m in k.face_masks() {
        out[m.count_ones() as usize].push(m);
    }
    out
}

/// Boundary `∂ : C_{k} → C_{k−1}` from faces with `k+1` vertices to faces with `k`.
fn boundary(upper: &[Mask], lower: &[Mask]) -> IntMatrix {
    let index: HashMap<Mask, usize> = lower.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut d = IntMatrix::zeros(lower.len(), upper.len());
    for (j, &f) in upper.iter().enumerate() {
        for (pos, v) in vertices_of(f).into_iter().enumerate() {
            let row = index[&(f & !(1 << v))];
            d[(row, j)] = BigInt::from(if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    d
}

/// Augmented simplicial chain complex in cohomological indexing: chain degree
/// `k` (faces of dimension `k`) sits in degree `−k`, so `H^{−k} = H̃_k`.
pub(crate) fn augmented_complex(k: &SimplicialComplex) -> ChainComplex {
    let layers = layers(k);
    if layers.is_empty() {
        return ChainComplex::concentrated(1, 0);
    }
    let top = layers.len() - 1; // faces of dimension top-1
    // degrees run from -(top-1) up to 1 (the empty face, dimension -1)
    let ranks: Vec<usize> = (0..=top).rev().map(|s| layers[s].len()).collect();
    let differentials = (1..=top).rev().map(|s| boundary(&layers[s], &layers[s - 1])).collect();
    ChainComplex::new(1 - top as i64, ranks, differentials).expect("boundary of boundary is zero")
}

/// Reduced homology in degrees −1..=dim.
pub fn reduced_homology(k: &SimplicialComplex, coeffs: Coefficients) -> Result<Vec<HomologyGroup>, SimplicialError> {
    match coeffs.check()? {
        Coefficients::Integers => {
            let c = augmented_complex(k);
            Ok((-1..=k.dim()).map(|d| HomologyGroup::Integral(c.homology(-d))).collect())
        }
        field => Ok(reduced_betti(k, field)?.into_iter().map(HomologyGroup::Dimension).collect()),
    }
}

/// Reduced Betti numbers over ℚ or 𝔽_p in degrees −1..=dim.
pub fn reduced_betti(k: &SimplicialComplex, field: Coefficients) -> Result<Vec<usize>, SimplicialError> {
    let rank_of = |m: &IntMatrix| match field {
        Coefficients::Prime(p) => m.rank_mod_p(p),
        _ => m.rank(),
    };
    if let Coefficients::Prime(p) = field {
        if !is_prime(p) {
            return Err(SimplicialError::NotPrime(p));
        }
    }
    let layers = layers(k);
    if layers.is_empty() {
        return Ok(Vec::new());
    }
    // ranks[s] = rank of ∂ from faces with s vertices to faces with s-1 vertices
    let mut ranks = vec![0usize; layers.len() + 1];
    for s in 1..layers.len() {
        ranks[s] = rank_of(&boundary(&layers[s], &layers[s - 1]));
    }
    Ok((0..layers.len()).map(|s| layers[s].len() - ranks[s] - ranks[s + 1]).collect())
}

/// Reduced Euler characteristic `Σ (−1)^i f_i`, from `i = −1`.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector().iter().enumerate().map(|(s, &f)| if s % 2 == 1 { f as i64 } else { -(f as i64) }).sum()
}

/// Reisner's criterion: every link `lk σ` (σ = ∅ included) has vanishing
/// reduced homology below its dimension over the given field.
pub fn is_cohen_macaulay(k: &SimplicialComplex, field: Coefficients) -> Result<bool, SimplicialError> {
    let field = match field.check()? {
        Coefficients::Integers => Coefficients::Rationals,
        f => f,
    };
    for sigma in k.face_masks() {
        let link = k.link_mask(sigma);
        let betti = reduced_betti(&link, field)?;
        let dim = link.dim();
        // betti[i] is degree i-1
        if betti.iter().enumerate().any(|(i, &b)| (i as i64 - 1) < dim && b != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integral(k: &SimplicialComplex) -> Vec<FgAbelianGroup> {
        reduced_homology(k, Coefficients::Integers)
            .unwrap()
            .into_iter()
            .map(|h| match h {
                HomologyGroup::Integral(g) => g,
                _ => unreachable!(),
            })
            .collect()
    }

    fn two_edges() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![0, 1], vec![2, 3]]).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = (0..4).map(|s| (0..4).filter(|&v| v != s).collect()).collect();
        SimplicialComplex::new(4, &facets).unwrap()
    }

    #[test]
    fn homology_examples() {
        let z = FgAbelianGroup::free(1);
        let o = FgAbelianGroup::trivial();
        assert_eq!(integral(&two_edges()), vec![o.clone(), z.clone(), o.clone()]);
        assert_eq!(integral(&four_cycle()), vec![o.clone(), o.clone(), z.clone()]);
        assert_eq!(integral(&tetra_boundary()), vec![o.clone(), o.clone(), o.clone(), z.clone()]);
    }

    #[test]
    fn empty_face_has_degree_minus_one_class() {
        let k = SimplicialComplex::empty_face_only(3);
        assert_eq!(integral(&k), vec![FgAbelianGroup::free(1)]);
        assert_eq!(reduced_betti(&k, Coefficients::Rationals).unwrap(), vec![1]);
    }

    #[test]
    fn torsion_in_projective_plane() {
        // Six-vertex triangulation of RP².
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        let k = SimplicialComplex::new(6, &facets).unwrap();
        let h = integral(&k);
        assert_eq!(h[2], FgAbelianGroup::from_cyclic_orders(0, &[BigInt::from(2)]));
        assert!(h[3].is_trivial());
        assert_eq!(reduced_betti(&k, Coefficients::Prime(2)).unwrap(), vec![0, 0, 1, 1]);
        assert_eq!(reduced_betti(&k, Coefficients::Rationals).unwrap(), vec![0, 0, 0, 0]);
        assert!(is_cohen_macaulay(&k, Coefficients::Rationals).unwrap());
        assert!(!is_cohen_macaulay(&k, Coefficients::Prime(2)).unwrap());
    }

    #[test]
    fn cohen_macaulay_examples() {
        assert!(is_cohen_macaulay(&four_cycle(), Coefficients::Rationals).unwrap());
        for f in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
            assert!(!is_cohen_macaulay(&two_edges(), f).unwrap());
        }
        assert!(is_cohen_macaulay(&tetra_boundary(), Coefficients::Prime(2)).unwrap());
        assert_eq!(is_cohen_macaulay(&four_cycle(), Coefficients::Prime(6)), Err(SimplicialError::NotPrime(6)));
    }

    #[test]
    fn euler_matches_betti() {
        for k in [two_edges(), four_cycle(), tetra_boundary()] {
            let b = reduced_betti(&k, Coefficients::Rationals).unwrap();
            let alt: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 1 { x as i64 } else { -(x as i64) }).sum();
            assert_eq!(euler_characteristic(&k), alt);
        }
    }
}
