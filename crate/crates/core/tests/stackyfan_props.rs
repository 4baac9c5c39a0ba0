mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use toric_k0::exactlinalg::{cokernel_structure, IntMatrix};
use toric_k0::stackyfan::{gale_dual, multiplicity, validate, StackyFan};

use common::{build, plane_fan};

fn permuted(rays: &[Vec<i64>], cones: &[Vec<usize>], perm: &[usize], rotate: usize) -> StackyFan {
    // Ray i moves to position perm[i].
    let mut new_rays = vec![Vec::new(); rays.len()];
    for (i, r) in rays.iter().enumerate() {
        new_rays[perm[i]] = r.clone();
    }
    let mut new_cones: Vec<Vec<usize>> = cones.iter().map(|c| c.iter().rev().map(|&i| perm[i]).collect()).collect();
    let len = new_cones.len();
    new_cones.rotate_left(rotate % len);
    build(&new_rays, &new_cones)
}

fn fan_and_perm() -> impl Strategy<Value = ((Vec<Vec<i64>>, Vec<Vec<usize>>), Vec<usize>, usize)> {
    plane_fan(6, 3).prop_flat_map(|f| {
        let n = f.0.len();
        (Just(f), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 0usize..6)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validation_ignores_labels(((rays, cones), perm, rot) in fan_and_perm()) {
        let a = validate(&build(&rays, &cones));
        let b = validate(&permuted(&rays, &cones, &perm, rot));
        prop_assert!(a.valid && a.complete && a.simplicial);
        prop_assert_eq!((a.valid, a.simplicial, a.fan_axiom, a.complete), (b.valid, b.simplicial, b.fan_axiom, b.complete));
    }

    #[test]
    fn removing_a_cone_breaks_completeness_only((rays, cones) in plane_fan(6, 3), k in 0usize..6) {
        let mut fewer = cones.clone();
        fewer.remove(k % cones.len());
        let d = validate(&build(&rays, &fewer));
        prop_assert!(d.valid);
        prop_assert!(!d.complete);
    }

    #[test]
    fn overlapping_cones_violate_the_fan_axiom((rays, cones) in plane_fan(6, 3)) {
        // A cone spanning two non-adjacent rays overlaps the cones between them.
        prop_assume!(rays.len() >= 4);
        let mut bad = cones.clone();
        bad.push(vec![0, 2]);
        let det = rays[0][0] * rays[2][1] - rays[0][1] * rays[2][0];
        prop_assume!(det != 0);
        let d = validate(&build(&rays, &bad));
        prop_assert!(!d.valid);
        prop_assert_eq!(d.fan_axiom, Some(false));
    }

    #[test]
    fn plane_multiplicities_are_determinants((rays, cones) in plane_fan(6, 3)) {
        let fan = build(&rays, &cones);
        for c in &cones {
            let (a, b) = (&rays[c[0]], &rays[c[1]]);
            let det = (a[0] * b[1] - a[1] * b[0]).abs();
            prop_assert_eq!(multiplicity(&fan, c).unwrap(), BigInt::from(det));
        }
    }

    #[test]
    fn gale_dual_is_a_cokernel((rays, cones) in plane_fan(6, 3)) {
        let fan = build(&rays, &cones);
        let g = gale_dual(&fan).unwrap();
        let n = rays.len();
        prop_assert_eq!(g.group().rank, n - 2);
        prop_assert!(g.group().is_isomorphic(&cokernel_structure(&fan.free_ray_matrix().transpose())));
        // Σᵢ ⟨m, vᵢ⟩ β^∨(eᵢ) = 0 for both coordinate functionals m.
        let width = g.beta_vee[0].len();
        for j in 0..2 {
            let mut sum = vec![BigInt::zero(); width];
            for (i, b) in g.beta_vee.iter().enumerate() {
                for (s, x) in sum.iter_mut().zip(b) {
                    *s += x * rays[i][j];
                }
            }
            let r = g.group().rank;
            prop_assert!(sum[..r].iter().all(Zero::is_zero));
            for (x, a) in sum[r..].iter().zip(&g.group().invariant_factors) {
                prop_assert!(x.is_multiple_of(a));
            }
        }
        // The β^∨(eᵢ) generate DG(β).
        let mut gens: Vec<Vec<BigInt>> = g.beta_vee.clone();
        for (k, a) in g.group().invariant_factors.iter().enumerate() {
            let mut e = vec![BigInt::zero(); width];
            e[g.group().rank + k] = a.clone();
            gens.push(e);
        }
        prop_assert!(cokernel_structure(&IntMatrix::from_columns(width, &gens)).is_trivial());
        for k in 0..g.group().rank {
            let first = g.beta_vee.iter().map(|b| &b[k]).find(|x| !x.is_zero());
            prop_assert!(first.is_some_and(|x| x.is_positive()));
        }
    }
}
