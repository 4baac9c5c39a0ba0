//! Stacky fans over a finitely generated abelian group `N = ℤ^d ⊕ ⊕ ℤ/aⱼ`.

mod cones;
mod gale;

pub use gale::{gale_dual, GaleDual};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlinalg::{snf, FgAbelianGroup, IntMatrix};
use crate::simplicial::{SimplicialComplex, SimplicialError};

/// Fans with more rays than this skip the pairwise fan-axiom check.
pub const FAN_AXIOM_RAY_CAP: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("torsion invariants must be at least 2 and form a divisibility chain, got {0:?}")]
    BadTorsion(Vec<BigInt>),
    #[error("ray {ray} has {found} {part} coordinates, lattice expects {expected}")]
    RayShape { ray: usize, part: &'static str, expected: usize, found: usize },
    #[error("cone {cone:?} refers to ray {ray}, but there are only {count} rays")]
    RayIndexOutOfRange { cone: Vec<usize>, ray: usize, count: usize },
    #[error("cone {0:?} is not simplicial")]
    NotSimplicial(Vec<usize>),
    #[error("multiplicities are defined on torsion-free lattices; reduce the lattice first")]
    TorsionLattice,
    #[error("rays span a sublattice of rank {rank} in a lattice of free rank {free_rank}")]
    RaysDoNotSpan { rank: usize, free_rank: usize },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl Lattice {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, FanError> {
        let two = BigInt::from(2);
        let chain = torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if torsion.iter().any(|a| a < &two) || !chain {
            return Err(FanError::BadTorsion(torsion));
        }
        Ok(Lattice { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Lattice { free_rank: rank, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic_orders(0, &self.torsion)
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for a in &self.torsion {
            write!(f, " + Z/{a}")?;
        }
        Ok(())
    }
}

/// An element of a [`Lattice`]: free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        LatticePoint { free, torsion }
    }

    pub fn free_only<T: Into<BigInt> + Clone>(free: &[T]) -> Self {
        LatticePoint { free: free.iter().cloned().map(Into::into).collect(), torsion: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    lattice: Lattice,
    rays: Vec<LatticePoint>,
    max_cones: Vec<Vec<usize>>,
}

impl StackyFan {
    /// Checks coordinate counts and reduces torsion residues into `[0, aⱼ)`.
    /// Everything else is left to [`validate`].
    pub fn new(lattice: Lattice, rays: Vec<LatticePoint>, max_cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        let mut reduced = Vec::with_capacity(rays.len());
        for (ray, p) in rays.into_iter().enumerate() {
            if p.free.len() != lattice.free_rank {
                return Err(FanError::RayShape { ray, part: "free", expected: lattice.free_rank, found: p.free.len() });
            }
            if p.torsion.len() != lattice.torsion.len() {
                let (expected, found) = (lattice.torsion.len(), p.torsion.len());
                return Err(FanError::RayShape { ray, part: "torsion", expected, found });
            }
            let torsion = p.torsion.iter().zip(&lattice.torsion).map(|(r, a)| r.mod_floor(a)).collect();
            reduced.push(LatticePoint { free: p.free, torsion });
        }
        Ok(StackyFan { lattice, rays: reduced, max_cones })
    }

    /// Fan in `ℤ^d` from integer rays and 0-based cones.
    pub fn free<T: Into<BigInt> + Clone>(rays: &[Vec<T>], max_cones: &[Vec<usize>]) -> Result<Self, FanError> {
        let d = rays.first().map_or(0, Vec::len);
        let rays = rays.iter().map(|r| LatticePoint::free_only(r)).collect();
        Self::new(Lattice::free(d), rays, max_cones.to_vec())
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    fn free_parts(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().map(|r| r.free.clone()).collect()
    }

    /// `d × |cone|` matrix whose columns are the free parts of the cone's rays.
    fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].free.clone()).collect();
        IntMatrix::from_columns(self.lattice.free_rank, &cols)
    }

    /// `d × n` matrix of all free parts.
    pub fn free_ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.lattice.free_rank, &self.free_parts())
    }

    fn check_indices(&self, cone: &[usize]) -> Result<(), FanError> {
        match cone.iter().find(|&&i| i >= self.rays.len()) {
            Some(&ray) => Err(FanError::RayIndexOutOfRange { cone: cone.to_vec(), ray, count: self.rays.len() }),
            None => Ok(()),
        }
    }

    fn is_simplicial_cone(&self, cone: &[usize]) -> bool {
        self.cone_matrix(cone).rank() == cone.len()
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    /// Well-formed, simplicial, and the fan axiom holds or was skipped.
    pub valid: bool,
    pub simplicial: bool,
    /// `None` when the check was skipped.
    pub fan_axiom: Option<bool>,
    pub complete: bool,
    pub messages: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidateOptions {
    pub check_fan_axiom: bool,
    pub fan_axiom_ray_cap: usize,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { check_fan_axiom: true, fan_axiom_ray_cap: FAN_AXIOM_RAY_CAP }
    }
}

pub fn validate(fan: &StackyFan) -> Diagnostics {
    validate_with(fan, ValidateOptions::default())
}

pub fn validate_with(fan: &StackyFan, opts: ValidateOptions) -> Diagnostics {
    let mut messages = Vec::new();
    let mut well_formed = true;
    let d = fan.lattice.free_rank;

    for (i, r) in fan.rays.iter().enumerate() {
        if r.free.iter().all(Zero::is_zero) {
            messages.push(format!("ray {i} has zero free part"));
            well_formed = false;
        }
    }
    for i in 0..fan.rays.len() {
        for j in i + 1..fan.rays.len() {
            if positively_parallel(&fan.rays[i].free, &fan.rays[j].free) {
                messages.push(format!("rays {i} and {j} span the same ray"));
                well_formed = false;
            }
        }
    }
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for c in &fan.max_cones {
        if c.is_empty() {
            messages.push("empty cone".into());
            well_formed = false;
            continue;
        }
        if let Err(e) = fan.check_indices(c) {
            messages.push(e.to_string());
            well_formed = false;
            continue;
        }
        let set: BTreeSet<usize> = c.iter().copied().collect();
        if set.len() != c.len() {
            messages.push(format!("cone {c:?} repeats a ray"));
            well_formed = false;
        }
        cones.push(set.into_iter().collect());
    }
    for (a, ca) in cones.iter().enumerate() {
        for (b, cb) in cones.iter().enumerate() {
            if a != b && ca.iter().all(|i| cb.contains(i)) && (ca.len() < cb.len() || a > b) {
                messages.push(format!("cone {ca:?} is not maximal (contained in {cb:?})"));
                well_formed = false;
            }
        }
    }

    let non_simplicial: Vec<&Vec<usize>> = cones.iter().filter(|c| !fan.is_simplicial_cone(c)).collect();
    for c in &non_simplicial {
        messages.push(format!("cone {c:?} is not simplicial"));
    }
    let simplicial = non_simplicial.is_empty();

    let fan_axiom = if !well_formed || !simplicial {
        Some(false)
    } else if !opts.check_fan_axiom || fan.rays.len() > opts.fan_axiom_ray_cap {
        messages.push(format!("fan axiom check skipped ({} rays)", fan.rays.len()));
        None
    } else {
        let rays = fan.free_parts();
        let mut ok = true;
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if !cones::meet_in_common_face(&rays, &cones[a], &cones[b]) {
                    messages.push(format!("cones {:?} and {:?} do not meet in a common face", cones[a], cones[b]));
                    ok = false;
                }
            }
        }
        Some(ok)
    };

    let complete = fan_axiom != Some(false) && ridge_paired(&cones, d, &mut messages);
    Diagnostics { valid: well_formed && simplicial && fan_axiom != Some(false), simplicial, fan_axiom, complete, messages }
}

fn positively_parallel(u: &[BigInt], v: &[BigInt]) -> bool {
    let dot: BigInt = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let uu: BigInt = u.iter().map(|a| a * a).sum();
    let vv: BigInt = v.iter().map(|a| a * a).sum();
    dot.is_positive() && &dot * &dot == uu * vv
}

/// Pure of dimension `d`, every ridge in exactly two cones, connected adjacency.
fn ridge_paired(cones: &[Vec<usize>], d: usize, messages: &mut Vec<String>) -> bool {
    if d == 0 || cones.is_empty() || cones.iter().any(|c| c.len() != d) {
        messages.push(format!("not complete: maximal cones are not all of dimension {d}"));
        return false;
    }
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, c) in cones.iter().enumerate() {
        for drop in 0..c.len() {
            let ridge: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v).collect();
            ridges.entry(ridge).or_default().push(k);
        }
    }
    if let Some((r, owners)) = ridges.iter().find(|(_, o)| o.len() != 2) {
        messages.push(format!("not complete: ridge {r:?} lies in {} maximal cones", owners.len()));
        return false;
    }
    let mut seen = vec![false; cones.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(k) = stack.pop() {
        for owners in ridges.values().filter(|o| o.contains(&k)) {
            for &o in owners {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        messages.push("not complete: cone adjacency graph is disconnected".into());
        return false;
    }
    true
}

/// Index of the sublattice spanned by the cone's rays inside the saturation
/// of their span.
pub fn multiplicity(fan: &StackyFan, cone: &[usize]) -> Result<BigInt, FanError> {
    if !fan.lattice.is_torsion_free() {
        return Err(FanError::TorsionLattice);
    }
    fan.check_indices(cone)?;
    let sf = snf(&fan.cone_matrix(cone));
    if sf.rank() != cone.len() {
        return Err(FanError::NotSimplicial(cone.to_vec()));
    }
    Ok(sf.diagonal().iter().take(cone.len()).fold(BigInt::one(), |acc, x| acc * x.abs()))
}

/// The complex on the ray indices whose faces are the faces of the maximal cones.
pub fn underlying_complex(fan: &StackyFan) -> Result<SimplicialComplex, FanError> {
    for c in &fan.max_cones {
        fan.check_indices(c)?;
    }
    Ok(SimplicialComplex::new(fan.rays.len(), &fan.max_cones)?)
}

/// Projects rays to `N / torsion(N)`, keeping the cones.
pub fn reduce_lattice(fan: &StackyFan) -> (StackyFan, FgAbelianGroup) {
    let rays = fan.rays.iter().map(|r| LatticePoint::new(r.free.clone(), Vec::new())).collect();
    let reduced = StackyFan { lattice: Lattice::free(fan.lattice.free_rank), rays, max_cones: fan.max_cones.clone() };
    (reduced, fan.lattice.torsion_group())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p2() -> StackyFan {
        StackyFan::free(&[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn p2_validates() {
        let d = validate(&p2());
        assert!(d.valid && d.simplicial && d.complete, "{d:?}");
        assert_eq!(d.fan_axiom, Some(true));
    }

    #[test]
    fn single_cone_is_valid_but_incomplete() {
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let d = validate(&f);
        assert!(d.valid && d.simplicial);
        assert!(!d.complete);
    }

    #[test]
    fn dependent_rays_are_not_simplicial() {
        let f = StackyFan::free(&[vec![1, 0], vec![2, 0]], &[vec![0, 1]]).unwrap();
        let d = validate(&f);
        assert!(!d.simplicial && !d.valid);
    }

    #[test]
    fn malformed_cones_reported() {
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1]], &[vec![0, 5]]).unwrap();
        let d = validate(&f);
        assert!(!d.valid);
        assert!(d.messages.iter().any(|m| m.contains("ray 5")));
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1]], &[vec![]]).unwrap();
        assert!(validate(&f).messages.iter().any(|m| m.contains("empty cone")));
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![0]]).unwrap();
        assert!(!validate(&f).valid);
    }

    #[test]
    fn overlapping_fan_fails_axiom() {
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0]], &[vec![0, 1], vec![2, 3]]).unwrap();
        let d = validate(&f);
        assert_eq!(d.fan_axiom, Some(false));
        assert!(!d.valid);
        let skipped = validate_with(&f, ValidateOptions { check_fan_axiom: false, ..Default::default() });
        assert_eq!(skipped.fan_axiom, None);
        assert!(skipped.messages.iter().any(|m| m.contains("skipped")));
    }

    #[test]
    fn parallel_and_zero_rays_rejected() {
        let f = StackyFan::free(&[vec![1, 0], vec![2, 0], vec![0, 1]], &[vec![0, 2], vec![1, 2]]).unwrap();
        assert!(!validate(&f).valid);
        let f = StackyFan::free(&[vec![0, 0], vec![0, 1]], &[vec![1]]).unwrap();
        assert!(!validate(&f).valid);
        let p1 = StackyFan::free(&[vec![1], vec![-1]], &[vec![0], vec![1]]).unwrap();
        let d = validate(&p1);
        assert!(d.valid && d.complete);
    }

    #[test]
    fn multiplicities() {
        let f = StackyFan::free(&[vec![1, 0], vec![0, 1], vec![1, 2], vec![-1, -2]], &[vec![0, 1]]).unwrap();
        assert_eq!(multiplicity(&f, &[0, 1]).unwrap(), BigInt::from(1));
        assert_eq!(multiplicity(&f, &[0, 2]).unwrap(), BigInt::from(2));
        assert_eq!(multiplicity(&f, &[0, 3]).unwrap(), BigInt::from(2));
        assert_eq!(multiplicity(&f, &[2]).unwrap(), BigInt::from(1));
        assert_eq!(multiplicity(&f, &[2, 3]), Err(FanError::NotSimplicial(vec![2, 3])));
    }

    #[test]
    fn underlying_complexes() {
        let k = underlying_complex(&p2()).unwrap();
        assert_eq!(k.facets(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let single = StackyFan::free(&[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert_eq!(underlying_complex(&single).unwrap(), SimplicialComplex::simplex(2));
    }

    #[test]
    fn reductions() {
        let lat = Lattice::new(1, vec![BigInt::from(2)]).unwrap();
        let rays = vec![
            LatticePoint::new(vec![1.into()], vec![1.into()]),
            LatticePoint::new(vec![(-1).into()], vec![0.into()]),
        ];
        let gerbe = StackyFan::new(lat, rays, vec![vec![0], vec![1]]).unwrap();
        let (red, tors) = reduce_lattice(&gerbe);
        let p1 = StackyFan::free(&[vec![1], vec![-1]], &[vec![0], vec![1]]).unwrap();
        assert_eq!(red, p1);
        assert_eq!(tors, FgAbelianGroup::from_cyclic_orders(0, &[BigInt::from(2)]));

        let (same, trivial) = reduce_lattice(&p2());
        assert_eq!(same, p2());
        assert!(trivial.is_trivial());

        let lat = Lattice::new(2, vec![BigInt::from(3)]).unwrap();
        let rays = [[1, 0, 1], [0, 1, 2], [-1, -1, 0]]
            .iter()
            .map(|r| LatticePoint::new(vec![r[0].into(), r[1].into()], vec![r[2].into()]))
            .collect();
        let f = StackyFan::new(lat, rays, p2().max_cones().to_vec()).unwrap();
        let (red, tors) = reduce_lattice(&f);
        assert_eq!(red, p2());
        assert_eq!(tors, FgAbelianGroup::from_cyclic_orders(0, &[BigInt::from(3)]));
    }

    #[test]
    fn lattice_checks() {
        assert!(Lattice::new(1, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(Lattice::new(1, vec![BigInt::from(1)]).is_err());
        assert!(Lattice::new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
        let lat = Lattice::new(1, vec![BigInt::from(2)]).unwrap();
        let bad = StackyFan::new(lat.clone(), vec![LatticePoint::free_only(&[1])], vec![]);
        assert!(matches!(bad, Err(FanError::RayShape { part: "torsion", .. })));
        let f = StackyFan::new(lat, vec![LatticePoint::new(vec![1.into()], vec![5.into()])], vec![]).unwrap();
        assert_eq!(f.rays()[0].torsion, vec![BigInt::from(1)]);
        assert_eq!(multiplicity(&f, &[0]), Err(FanError::TorsionLattice));
    }
}
