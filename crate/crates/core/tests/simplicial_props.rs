use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use toric_k0::simplicial::{
    euler_characteristic, is_cohen_macaulay, is_shellable, is_shelling_order, reduced_betti, reduced_homology,
    Coefficients, HomologyGroup, ShellingVerdict, SimplicialComplex,
};

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        let facet = prop::collection::btree_set(0..n, 1..=n.min(4));
        prop::collection::vec(facet, 1..=6).prop_map(move |fs| {
            let fs: Vec<Vec<usize>> = fs.into_iter().map(|s| s.into_iter().collect()).collect();
            SimplicialComplex::new(n, &fs).unwrap()
        })
    })
}

fn pure_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=6, 1usize..=3).prop_flat_map(|(n, k)| {
        let k = k.min(n);
        let facet = prop::sample::subsequence((0..n).collect::<Vec<_>>(), k);
        prop::collection::vec(facet, 1..=6).prop_map(move |fs| SimplicialComplex::new(n, &fs).unwrap())
    })
}

fn integral(k: &SimplicialComplex) -> Vec<toric_k0::exactlinalg::FgAbelianGroup> {
    reduced_homology(k, Coefficients::Integers)
        .unwrap()
        .into_iter()
        .map(|h| match h {
            HomologyGroup::Integral(g) => g,
            HomologyGroup::Dimension(_) => unreachable!("integer coefficients"),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(k in complex()) {
        for field in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
            let b = reduced_betti(&k, field).unwrap();
            let alt: i64 = b.iter().enumerate().map(|(s, &x)| if s % 2 == 1 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(alt, euler_characteristic(&k));
        }
    }

    #[test]
    fn universal_coefficients(k in complex()) {
        let h = integral(&k);
        let q = reduced_betti(&k, Coefficients::Rationals).unwrap();
        for p in [2u64, 3, 5] {
            let fp = reduced_betti(&k, Coefficients::Prime(p)).unwrap();
            let pb = BigInt::from(p);
            let tors = |i: usize| h[i].invariant_factors.iter().filter(|d| d.is_multiple_of(&pb)).count();
            for i in 0..h.len() {
                prop_assert_eq!(h[i].rank, q[i]);
                let below = if i == 0 { 0 } else { tors(i - 1) };
                prop_assert_eq!(fp[i], q[i] + tors(i) + below, "degree {} over F{}", i as i64 - 1, p);
            }
        }
    }

    #[test]
    fn shelling_witnesses_are_shellings(k in pure_complex()) {
        match is_shellable(&k).unwrap() {
            ShellingVerdict::Shellable(order) => {
                prop_assert!(is_shelling_order(&order));
                let a: BTreeSet<Vec<usize>> = order.iter().cloned().collect();
                let b: BTreeSet<Vec<usize>> = k.facets().into_iter().collect();
                prop_assert_eq!(a, b);
                prop_assert_eq!(order.len(), k.facets().len());
                for field in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
                    prop_assert!(is_cohen_macaulay(&k, field).unwrap());
                }
            }
            ShellingVerdict::NotShellable => {}
            v => prop_assert!(false, "small complexes get a verdict, got {:?}", v),
        }
    }

    #[test]
    fn nonfaces_determine_the_complex(k in complex()) {
        let back = SimplicialComplex::from_minimal_nonfaces(k.vertex_count(), &k.minimal_nonfaces()).unwrap();
        prop_assert_eq!(back, k);
    }

    #[test]
    fn links_are_stars_minus_the_face(k in complex()) {
        for sigma in k.faces() {
            let link = k.link(&sigma).unwrap();
            for tau in link.faces() {
                prop_assert!(tau.iter().all(|v| !sigma.contains(v)));
                let mut joined: Vec<usize> = sigma.iter().chain(&tau).copied().collect();
                joined.sort_unstable();
                prop_assert!(k.contains_face(&joined));
            }
        }
    }
}
