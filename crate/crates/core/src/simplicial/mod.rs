//! Finite simplicial complexes on at most 64 vertices.
//!
//! Faces are stored as vertex bitmasks; the public surface speaks in sorted
//! 0-based vertex lists. Reduced homology is indexed from −1 (the empty face).

mod homology;
mod shelling;

pub use homology::{euler_characteristic, is_cohen_macaulay, reduced_betti, reduced_homology, Coefficients, HomologyGroup};
pub use shelling::{is_shellable, is_shellable_with_cap, is_shelling_order, ShellingVerdict, DEFAULT_SHELL_CAP};

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("vertex {vertex} out of range for a complex on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("complexes are limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure (facet sizes {sizes:?})")]
    NotPure { sizes: Vec<usize> },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub(crate) type Mask = u64;

pub(crate) fn mask_of(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

pub(crate) fn vertices_of(mask: Mask) -> Vec<usize> {
    (0..64).filter(|v| mask & (1 << v) != 0).collect()
}

fn lex_key(mask: &Mask) -> Vec<usize> {
    vertices_of(*mask)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Inclusion-maximal faces, sorted lexicographically by vertex list.
    facets: Vec<Mask>,
}

impl SimplicialComplex {
    /// Complex generated by `facets`; non-maximal and duplicate entries are dropped.
    pub fn new(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        if vertex_count > 64 {
            return Err(SimplicialError::TooManyVertices(vertex_count));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&vertex) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(SimplicialError::VertexOutOfRange { vertex, count: vertex_count });
            }
            masks.push(mask_of(f));
        }
        Ok(Self::from_masks(vertex_count, masks))
    }

    pub(crate) fn from_masks(vertex_count: usize, masks: Vec<Mask>) -> Self {
        let mut facets: Vec<Mask> = masks
            .iter()
            .copied()
            .filter(|&m| !masks.iter().any(|&o| o != m && o & m == m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        facets.sort_by_key(lex_key);
        SimplicialComplex { vertex_count, facets }
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_masks(n, vec![if n == 64 { Mask::MAX } else { (1 << n) - 1 }])
    }

    /// The complex `{∅}`.
    pub fn empty_face_only(vertex_count: usize) -> Self {
        Self::from_masks(vertex_count, vec![0])
    }

    /// Complex whose faces are exactly the vertex sets containing none of `nonfaces`.
    pub fn from_minimal_nonfaces(vertex_count: usize, nonfaces: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        if vertex_count > 24 {
            return Err(SimplicialError::TooManyVertices(vertex_count));
        }
        let bad: Vec<Mask> = nonfaces.iter().map(|s| mask_of(s)).collect();
        let is_face = |s: Mask| !bad.iter().any(|&b| s & b == b);
        let maximal: Vec<Mask> = (0..1u64 << vertex_count)
            .filter(|&s| is_face(s) && (0..vertex_count).all(|v| s & (1 << v) != 0 || !is_face(s | (1 << v))))
            .collect();
        Ok(Self::from_masks(vertex_count, maximal))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| vertices_of(m)).collect()
    }

    pub(crate) fn facet_masks(&self) -> &[Mask] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `max facet size − 1`; −1 for `{∅}` and also for the void complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|m| m.count_ones() as i64).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|m| m.count_ones());
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let m = mask_of(face);
        face.iter().all(|&v| v < self.vertex_count) && self.has_mask(m)
    }

    pub(crate) fn has_mask(&self, m: Mask) -> bool {
        self.facets.iter().any(|&f| f & m == m)
    }

    /// All faces including ∅, as masks, ordered by size then lexicographically.
    pub(crate) fn face_masks(&self) -> Vec<Mask> {
        let mut all = BTreeSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut v: Vec<Mask> = all.into_iter().collect();
        v.sort_by_key(|m| (m.count_ones(), lex_key(m)));
        v
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.face_masks().into_iter().map(vertices_of).collect()
    }

    /// `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 2).max(0) as usize];
        for m in self.face_masks() {
            f[m.count_ones() as usize] += 1;
        }
        f
    }

    /// Inclusion-minimal non-faces, sorted lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::new();
        for face in self.face_masks() {
            for v in 0..self.vertex_count {
                let bit = 1 << v;
                if face & bit != 0 {
                    continue;
                }
                let s = face | bit;
                if self.has_mask(s) {
                    continue;
                }
                let minimal = vertices_of(s).iter().all(|&w| self.has_mask(s & !(1 << w)));
                if minimal {
                    found.insert(s);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().map(vertices_of).collect();
        out.sort();
        out
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}`.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex, SimplicialError> {
        if !self.contains_face(face) {
            return Err(SimplicialError::NotAFace(face.to_vec()));
        }
        Ok(self.link_mask(mask_of(face)))
    }

    pub(crate) fn link_mask(&self, sigma: Mask) -> SimplicialComplex {
        let masks = self.facets.iter().filter(|&&f| f & sigma == sigma).map(|&f| f & !sigma).collect();
        Self::from_masks(self.vertex_count, masks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
    }

    #[test]
    fn normalizes_facets() {
        let k = SimplicialComplex::new(3, &[vec![0, 1], vec![0], vec![1, 0], vec![2]]).unwrap();
        assert_eq!(k.facets(), vec![vec![0, 1], vec![2]]);
        assert!(!k.is_pure());
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn rejects_bad_vertex() {
        let err = SimplicialComplex::new(2, &[vec![0, 2]]).unwrap_err();
        assert_eq!(err, SimplicialError::VertexOutOfRange { vertex: 2, count: 2 });
    }

    #[test]
    fn minimal_nonfaces_examples() {
        assert_eq!(four_cycle().minimal_nonfaces(), vec![vec![0, 2], vec![1, 3]]);
        assert!(SimplicialComplex::simplex(4).minimal_nonfaces().is_empty());
        // Faces avoiding {0,1,2,3} and {4,5}: the open substack of P(1,1,1,1,2,2).
        let facets: Vec<Vec<usize>> = (0..4)
            .flat_map(|skip| {
                [4, 5].map(|w| {
                    let mut f: Vec<usize> = (0..4).filter(|&v| v != skip).collect();
                    f.push(w);
                    f
                })
            })
            .collect();
        let k = SimplicialComplex::new(6, &facets).unwrap();
        assert_eq!(k.minimal_nonfaces(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
    }

    #[test]
    fn nonfaces_round_trip() {
        let k = four_cycle();
        let back = SimplicialComplex::from_minimal_nonfaces(4, &k.minimal_nonfaces()).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn links() {
        let k = four_cycle();
        assert_eq!(k.link(&[0]).unwrap().facets(), vec![vec![1], vec![3]]);
        assert_eq!(k.link(&[]).unwrap(), k);
        let top = k.link(&[1, 2]).unwrap();
        assert_eq!(top, SimplicialComplex::empty_face_only(4));
        assert_eq!(k.link(&[0, 2]).unwrap_err(), SimplicialError::NotAFace(vec![0, 2]));
    }

    #[test]
    fn f_vector_of_cycle() {
        assert_eq!(four_cycle().f_vector(), vec![1, 4, 4]);
    }
}
