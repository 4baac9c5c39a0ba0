use num_bigint::BigInt;
use proptest::prelude::*;
use toric_k0::exactlinalg::{FgAbelianGroup, IntMatrix};
use toric_k0::homcomplex::{
    composes_to_zero, koszul_complex, long_exact_sequence_check, mapping_cone, mult_injectivity, top_koszul_quotient,
    ChainComplex, ChainMap,
};

/// Commuting endomorphisms of `ℤ^n`: polynomials in one matrix `a`, kept only
/// while every entry stays in `[-3, 3]`.
fn commuting_tuple() -> impl Strategy<Value = (usize, Vec<IntMatrix>)> {
    (1usize..=4).prop_flat_map(|n| {
        let a = prop::collection::vec(prop::collection::vec(-3i64..=3, n), n);
        let polys = prop::collection::vec((-2i64..=2, -2i64..=2, -1i64..=1), 0..=3);
        (Just(n), a, polys).prop_map(|(n, a, polys)| {
            let a = IntMatrix::from_rows(&a);
            let a2 = &a * &a;
            let gs = polys
                .into_iter()
                .map(|(c0, c1, c2)| {
                    let g = IntMatrix::identity(n).scaled(&c0.into()).add(&a.scaled(&c1.into())).add(&a2.scaled(&c2.into()));
                    if g.max_abs() <= BigInt::from(3) {
                        g
                    } else {
                        a.clone()
                    }
                })
                .collect();
            (n, gs)
        })
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_complexes_are_complexes((n, gs) in commuting_tuple()) {
        let k = koszul_complex(&gs, n).unwrap();
        prop_assert!(composes_to_zero(&k));
        prop_assert_eq!((k.start(), k.end()), (0, gs.len() as i64));
        let cone = mapping_cone(&ChainMap::scalar(&k, &BigInt::from(7)));
        prop_assert!(composes_to_zero(&cone));
    }

    #[test]
    fn appending_p_is_the_shifted_cone((n, gs) in commuting_tuple(), p in prime()) {
        let k = koszul_complex(&gs, n).unwrap();
        let mut with_p = gs.clone();
        with_p.push(IntMatrix::identity(n).scaled(&BigInt::from(p)));
        let kp = koszul_complex(&with_p, n).unwrap();
        let cone = mapping_cone(&ChainMap::scalar(&k, &BigInt::from(p))).shift(-1);
        for i in kp.start() - 1..=kp.end() + 1 {
            prop_assert_eq!(kp.homology(i), cone.homology(i), "degree {}", i);
        }
    }

    #[test]
    fn top_cohomology_is_the_quotient((n, gs) in commuting_tuple()) {
        let k = koszul_complex(&gs, n).unwrap();
        prop_assert_eq!(k.homology(gs.len() as i64), top_koszul_quotient(&gs, n));
    }

    #[test]
    fn long_exact_sequence_segments_are_exact((n, gs) in commuting_tuple(), p in prime()) {
        for seg in long_exact_sequence_check(&gs, n, p).unwrap() {
            prop_assert!(seg.exact, "{:?}", seg);
        }
    }

    #[test]
    fn injectivity_on_every_prime_means_free(rank in 0usize..3, orders in prop::collection::vec(2i64..13, 0..3)) {
        let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
        let g = FgAbelianGroup::from_cyclic_orders(rank, &orders);
        let all = [2u64, 3, 5, 7, 11].iter().all(|&p| mult_injectivity(&g, p).unwrap());
        prop_assert_eq!(all, g.is_free());
    }

    #[test]
    fn shifting_preserves_homology(ranks in prop::collection::vec(1usize..4, 1..4), k in -2i64..=2) {
        let start = 0;
        let zeros: Vec<IntMatrix> = ranks.windows(2).map(|w| IntMatrix::zeros(w[1], w[0])).collect();
        let c = ChainComplex::new(start, ranks.clone(), zeros).unwrap();
        let s = c.shift(k);
        for i in c.degrees() {
            prop_assert_eq!(c.homology(i), s.homology(i - k));
        }
    }
}
