mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use toric_k0::exactlinalg::{IntMatrix, Order};
use toric_k0::ktheory::{
    element_order_with, k0_structure, k0_structure_with, lattice_relation_multipliers, lattice_relations,
    lattice_relations_in_basis, laurent_lattice_relations, multiplicity_rank, ray_ring, sr_ideal, K0Options, Mode, Rank,
};
use toric_k0::ringpres::{abelian_structure, strong_groebner, IntPolynomial};
use toric_k0::stackyfan::StackyFan;

use common::{build, plane_fan, unimodular};

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..6)
}

/// The Laurent-mode group computed from lattice relations in the given basis.
fn laurent_group(fan: &StackyFan, relations: Vec<IntPolynomial>) -> toric_k0::exactlinalg::FgAbelianGroup {
    let ring = ray_ring(fan);
    let mut gens = sr_ideal(fan).unwrap();
    gens.extend(relations);
    abelian_structure(&strong_groebner(&ring, &gens).unwrap()).unwrap().group().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_is_the_multiplicity_sum((rays, cones) in plane_fan(5, 2)) {
        let fan = build(&rays, &cones);
        let k = k0_structure(&fan).unwrap();
        let expected = multiplicity_rank(&fan).unwrap();
        prop_assert_eq!(k.rank, Rank::Finite(usize::try_from(expected).unwrap()));
        prop_assert!(k.free);
        prop_assert_eq!(k.rational_rank, Some(match k.rank { Rank::Finite(r) => r, Rank::Infinite => unreachable!() }));
    }

    #[test]
    fn modes_agree((rays, cones) in plane_fan(5, 2)) {
        let fan = build(&rays, &cones);
        let a = k0_structure_with(&fan, K0Options { mode: Mode::Laurent, ..K0Options::default() }).unwrap();
        let b = k0_structure_with(&fan, K0Options { mode: Mode::GroupRing, ..K0Options::default() }).unwrap();
        prop_assert_eq!(a.group(), b.group());
        for expr in ["1", "x1", "1-x1", "(1-x1)*(1-x2)"] {
            prop_assert_eq!(element_order_with(&a, expr).unwrap(), element_order_with(&b, expr).unwrap());
        }
    }

    #[test]
    fn the_unit_class_has_infinite_order((rays, cones) in plane_fan(5, 2)) {
        let fan = build(&rays, &cones);
        let k = k0_structure(&fan).unwrap();
        prop_assert_eq!(element_order_with(&k, "1").unwrap(), Order::Infinite);
        // {1,2,3} is never a cone of a plane fan, so this product vanishes.
        prop_assert_eq!(element_order_with(&k, "(1-x1)*(1-x2)*(1-x3)").unwrap(), Order::Finite(BigInt::from(1)));
    }

    #[test]
    fn basis_changes_leave_the_group_alone((rays, cones) in plane_fan(5, 2), a in ops(), b in ops(), c in ops()) {
        let fan = build(&rays, &cones);
        let base = laurent_group(&fan, lattice_relations(&fan).unwrap());
        for o in [a, b, c] {
            let basis = unimodular(2, &o);
            let changed = laurent_group(&fan, lattice_relations_in_basis(&fan, &basis).unwrap());
            prop_assert_eq!(&changed, &base);
        }
    }

    #[test]
    fn binomial_and_laurent_relations_agree((rays, cones) in plane_fan(5, 2), o in ops()) {
        let fan = build(&rays, &cones);
        let basis = unimodular(2, &o);
        let ring = ray_ring(&fan);
        let g = lattice_relations_in_basis(&fan, &basis).unwrap();
        let h = laurent_lattice_relations(&fan, &basis).unwrap();
        let mult = lattice_relation_multipliers(&fan, &basis).unwrap();
        let units = strong_groebner(&ring, &[]).unwrap();
        for j in 0..g.len() {
            prop_assert!(units.contains(&h[j].mul_monomial(&mult[j]).sub(&g[j])));
        }
        let sr = sr_ideal(&fan).unwrap();
        let with_g = strong_groebner(&ring, &[sr.clone(), g.clone()].concat()).unwrap();
        let with_h = strong_groebner(&ring, &[sr, h.clone()].concat()).unwrap();
        for f in g.iter().chain(&with_g.generators()) {
            prop_assert!(with_h.contains(f));
        }
        for f in h.iter().chain(&with_h.generators()) {
            prop_assert!(with_g.contains(f));
        }
    }
}

#[test]
fn non_unimodular_bases_are_rejected() {
    let fan = build(&[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]);
    let doubled = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
    assert!(lattice_relations_in_basis(&fan, &doubled).is_err());
}
