//! Property tests for the algebraic laws of the permutation core and the
//! census monoid.

use proptest::prelude::*;

use cosetcheck_core::census::{merge_census, CycleTypeCensus};
use cosetcheck_core::perm::{Parity, Permutation};

/// A random permutation of a random degree in `1..=max_degree`, built by
/// sorting points under random keys.
fn arb_perm(max_degree: u32) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), n as usize).prop_map(move |keys| {
            let mut images: Vec<u32> = (1..=n).collect();
            images.sort_by_key(|&i| keys[(i - 1) as usize]);
            Permutation::from_images(images).expect("argsort yields a bijection")
        })
    })
}

/// A pair of equal-degree random permutations.
fn arb_pair(max_degree: u32) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let one = move || {
            proptest::collection::vec(any::<u64>(), n as usize).prop_map(move |keys| {
                let mut images: Vec<u32> = (1..=n).collect();
                images.sort_by_key(|&i| keys[(i - 1) as usize]);
                Permutation::from_images(images).unwrap()
            })
        };
        (one(), one())
    })
}

fn arb_triple(max_degree: u32) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let one = move || {
            proptest::collection::vec(any::<u64>(), n as usize).prop_map(move |keys| {
                let mut images: Vec<u32> = (1..=n).collect();
                images.sort_by_key(|&i| keys[(i - 1) as usize]);
                Permutation::from_images(images).unwrap()
            })
        };
        (one(), one(), one())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn cycle_decomposition_round_trips(p in arb_perm(16)) {
        let rebuilt = Permutation::from_cycles(p.degree(), &p.cycle_decompose()).unwrap();
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn parity_is_a_homomorphism((p, q) in arb_pair(16)) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.parity(), p.parity().xor(q.parity()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn composition_is_associative((p, q, r) in arb_triple(16)) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverse_laws(p in arb_perm(16)) {
        let id = Permutation::identity(p.degree()).unwrap();
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        prop_assert_eq!(id.compose(&p).unwrap(), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn order_is_the_least_annihilating_power(p in arb_perm(12)) {
        let order = p.order().unwrap();
        let id = Permutation::identity(p.degree()).unwrap();
        prop_assert_eq!(p.power(order as i64), id.clone());
        for k in 1..order {
            prop_assert_ne!(p.power(k as i64), id.clone());
        }
    }

    #[test]
    fn cycle_type_is_a_descending_partition_of_the_degree(p in arb_perm(16)) {
        let ty = p.cycle_type();
        let parts = ty.parts();
        prop_assert_eq!(parts.iter().sum::<u32>(), p.degree());
        prop_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(parts.iter().all(|&part| part >= 1));
    }

    #[test]
    fn setwise_fixing_passes_to_the_complement(
        p in arb_perm(12),
        mask in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let set: Vec<u32> = (1..=p.degree())
            .filter(|&i| mask[(i - 1) as usize])
            .collect();
        let complement: Vec<u32> = (1..=p.degree())
            .filter(|&i| !mask[(i - 1) as usize])
            .collect();
        if p.fixes_setwise(&set) {
            prop_assert!(p.fixes_setwise(&complement));
        }
    }

    #[test]
    fn conjugation_preserves_cycle_type((g, p) in arb_pair(12)) {
        prop_assert_eq!(p.conjugated_by(&g).cycle_type(), p.cycle_type());
    }

    #[test]
    fn parity_agrees_with_transposition_count(p in arb_perm(16)) {
        let transpositions: u64 = p
            .cycle_decompose()
            .iter()
            .map(|c| c.len() as u64 - 1)
            .sum();
        prop_assert_eq!(p.parity(), Parity::of_transposition_count(transpositions));
    }

    #[test]
    fn census_merge_is_commutative(
        (ps, qs) in (
            proptest::collection::vec(arb_fixed_perm(10), 0..20),
            proptest::collection::vec(arb_fixed_perm(10), 0..20),
        )
    ) {
        let mut a = CycleTypeCensus::new(10);
        for p in &ps {
            a.record(p.cycle_type());
        }
        let mut b = CycleTypeCensus::new(10);
        for q in &qs {
            b.record(q.cycle_type());
        }
        let ab = merge_census(a.clone(), b.clone()).unwrap();
        let ba = merge_census(b, a).unwrap();
        prop_assert_eq!(ab.clone(), ba);
        prop_assert_eq!(ab.total(), (ps.len() + qs.len()) as u64);
    }
}

/// A random permutation of a fixed degree.
fn arb_fixed_perm(n: u32) -> impl Strategy<Value = Permutation> {
    proptest::collection::vec(any::<u64>(), n as usize).prop_map(move |keys| {
        let mut images: Vec<u32> = (1..=n).collect();
        images.sort_by_key(|&i| keys[(i - 1) as usize]);
        Permutation::from_images(images).unwrap()
    })
}
