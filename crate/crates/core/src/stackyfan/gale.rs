use num_bigint::BigInt;
use num_integer::Integer;

use super::{FanError, StackyFan};
use crate::exactlinalg::{CokernelMap, FgAbelianGroup, IntMatrix};

/// The derived Gale dual `DG(β)` of `β : ℤⁿ → N, eᵢ ↦ vᵢ`.
#[derive(Clone, Debug)]
pub struct GaleDual {
    /// `[B̃ | Q]ᵀ`, an `(n+s) × (d+s)` matrix with `DG(β)` its cokernel.
    presentation: IntMatrix,
    map: CokernelMap,
    /// Class of the i-th dual basis vector, in the coordinates of `map`.
    pub beta_vee: Vec<Vec<BigInt>>,
}

impl GaleDual {
    pub fn group(&self) -> &FgAbelianGroup {
        self.map.group()
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    pub fn coordinates(&self) -> &CokernelMap {
        &self.map
    }

    pub fn ray_count(&self) -> usize {
        self.beta_vee.len()
    }
}

/// `DG(β) = coker([B̃ | Q]ᵀ)` with `N = ℤ^{d+s}/Q`.
///
/// Torsion residues are lifted to `[0, aⱼ)`. Free coordinates of the result
/// are signed so the first nonzero one among `beta_vee` is positive.
pub fn gale_dual(fan: &StackyFan) -> Result<GaleDual, FanError> {
    let lat = fan.lattice();
    let (d, s, n) = (lat.free_rank(), lat.torsion_invariants().len(), fan.ray_count());
    let rank = fan.free_ray_matrix().rank();
    if rank != d {
        return Err(FanError::RaysDoNotSpan { rank, free_rank: d });
    }
    let mut a = IntMatrix::zeros(d + s, n + s);
    for (i, ray) in fan.rays().iter().enumerate() {
        for (r, x) in ray.free.iter().enumerate() {
            a[(r, i)] = x.clone();
        }
        for (j, (x, inv)) in ray.torsion.iter().zip(lat.torsion_invariants()).enumerate() {
            a[(d + j, i)] = x.mod_floor(inv);
        }
    }
    for (j, inv) in lat.torsion_invariants().iter().enumerate() {
        a[(d + j, n + j)] = inv.clone();
    }
    let presentation = a.transpose();
    let mut map = CokernelMap::new(&presentation);
    let basis: Vec<Vec<BigInt>> = (0..n).map(|i| unit(n + s, i)).collect();
    map.normalize_signs(&basis);
    let beta_vee = basis.iter().map(|e| map.coordinates(e)).collect();
    Ok(GaleDual { presentation, map, beta_vee })
}

fn unit(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); len];
    v[i] = BigInt::from(1);
    v
}
