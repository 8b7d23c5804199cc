use proptest::prelude::*;
use rayon::prelude::*;
use rootstack_gw::rational::int;
use rootstack_gw::*;

fn cfg(delta: u32) -> GeometryConfig {
    GeometryConfig::new(delta).unwrap()
}

fn arb_key() -> impl Strategy<Value = (u32, InvariantKey)> {
    (1u32..=4, 1u32..=3, 0u32..=8, 0u32..=6, 0u32..=8)
        .prop_map(|(delta, d, n2, n3, n4)| (delta, InvariantKey::new(d, n2, n3, n4).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inadmissible_keys_vanish((delta, key) in arb_key()) {
        prop_assume!(!dimension_admissible(cfg(delta), key));
        let store = MemoStore::new();
        prop_assert_eq!(invariant(&store, cfg(delta), key).unwrap(), int(0));
        prop_assert!(store.is_empty());
    }

    #[test]
    fn values_do_not_depend_on_warm_state(
        (delta, key) in arb_key(),
        warmups in prop::collection::vec(arb_key(), 0..4),
    ) {
        let cold = invariant(&MemoStore::new(), cfg(delta), key).unwrap();
        let warm_store = MemoStore::new();
        for (wd, wk) in warmups {
            invariant(&warm_store, cfg(wd), wk).unwrap();
        }
        let warm = invariant(&warm_store, cfg(delta), key).unwrap();
        prop_assert_eq!(&cold, &warm);
        prop_assert_eq!(invariant(&warm_store, cfg(delta), key).unwrap(), cold);
    }

    #[test]
    fn gated_recursions_agree_with_algorithm((delta, key) in arb_key()) {
        let c = cfg(delta);
        let store = MemoStore::new();
        let expected = invariant(&store, c, key).unwrap();
        for which in Recursion::ALL {
            if which.gate_holds(c, key) {
                let terms = recursion_terms(&store, c, which, key).unwrap();
                prop_assert_eq!(terms.solve().unwrap(), expected.clone(), "{} at delta={} {}", which, delta, key);
            }
        }
    }
}

#[test]
fn parallel_queries_share_a_store() {
    let keys: Vec<(u32, InvariantKey)> = (1..=3)
        .flat_map(|delta| {
            (1..=3).flat_map(move |d| {
                (0..=5).flat_map(move |n3| {
                    (0..=6).filter_map(move |n4| {
                        admissible_n2(cfg(delta), d, n3, n4)
                            .map(|n2| (delta, InvariantKey::new(d, n2, n3, n4).unwrap()))
                    })
                })
            })
        })
        .collect();
    let shared = MemoStore::new();
    let parallel: Vec<Rational> = keys
        .par_iter()
        .map(|(delta, k)| invariant(&shared, cfg(*delta), *k).unwrap())
        .collect();
    for ((delta, k), value) in keys.iter().zip(parallel) {
        assert_eq!(invariant(&MemoStore::new(), cfg(*delta), *k).unwrap(), value);
    }
}

#[test]
fn general_reduction_matches_core() {
    let store = MemoStore::new();
    for delta in 1..=3 {
        for n1 in 0..=3 {
            let core = invariant(&store, cfg(delta), InvariantKey::new(2, 1, 0, 2).unwrap()).unwrap();
            let general = general_invariant(&store, cfg(delta), GeneralKey::new(2, [0, n1, 1, 0, 2]).unwrap()).unwrap();
            assert_eq!(general, core * int(2i64.pow(n1)));
        }
    }
}
