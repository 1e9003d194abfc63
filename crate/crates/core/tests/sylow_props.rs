//! Randomized agreement checks between the constructive τ-finders and the
//! brute-force coset reports, plus the order-classification sweeps that
//! justify reading "order ≠ p" as "not a p-power".

use rand::Rng;

use cosetcheck_core::centralizer::sample_rng;
use cosetcheck_core::perm::{lex, Parity, Permutation};
use cosetcheck_core::sylow::{
    build_sylow, coset_order_report, tau_breaking_order_p, tau_breaking_p_cycle,
    tau_breaking_p_power, SylowDesc,
};

const TRIALS_PER_CASE: usize = 200;

fn is_p_cycle(x: &Permutation, p: u32) -> bool {
    let ty = x.cycle_type();
    let parts = ty.parts();
    parts.first() == Some(&p) && parts[1..].iter().all(|&q| q == 1)
}

/// A uniformly random `p`-cycle of the given degree, resampled until it
/// falls outside the subgroup. Returns `None` when every `p`-cycle lies in
/// the subgroup (only the case `p = n = 3`).
fn random_p_cycle(desc: &SylowDesc, rng: &mut impl Rng) -> Option<Permutation> {
    let n = desc.degree();
    let p = desc.p();
    for _ in 0..200 {
        let mut points: Vec<u32> = (1..=n).collect();
        for i in 0..p as usize {
            let j = rng.gen_range(i..points.len());
            points.swap(i, j);
        }
        points.truncate(p as usize);
        let x = Permutation::from_cycles(n, &[points]).unwrap();
        if !desc.contains(&x) {
            return Some(x);
        }
    }
    None
}

/// A uniformly random product of two disjoint `p`-cycles covering `[2p]`.
fn random_double_p_cycle(desc: &SylowDesc, rng: &mut impl Rng) -> Permutation {
    let n = desc.degree();
    let p = desc.p() as usize;
    loop {
        let mut points: Vec<u32> = (1..=n).collect();
        for i in 0..points.len() - 1 {
            let j = rng.gen_range(i..points.len());
            points.swap(i, j);
        }
        let first = points[..p].to_vec();
        let second = points[p..].to_vec();
        let x = Permutation::from_cycles(n, &[first, second]).unwrap();
        if !desc.contains(&x) {
            return x;
        }
    }
}

#[test]
fn p_cycle_finder_agrees_with_brute_force() {
    let mut rng = sample_rng(2024, 0);
    for p in [3u32, 5, 7] {
        for n in p..=2 * p - 1 {
            let desc = build_sylow(p, n).unwrap();
            if random_p_cycle(&desc, &mut rng).is_none() {
                assert_eq!((p, n), (3, 3), "only A_3 has no admissible p-cycle");
                continue;
            }
            for trial in 0..TRIALS_PER_CASE {
                let x = random_p_cycle(&desc, &mut rng).unwrap();
                let (tau, _) = tau_breaking_p_cycle(&desc, &x)
                    .unwrap_or_else(|e| panic!("p={p} n={n} trial {trial}: {e}"));
                assert!(desc.contains(&tau));
                let product = x.compose(&tau).unwrap();
                assert!(!product.is_identity());
                assert!(!is_p_cycle(&product, p), "p={p} n={n} x={x} tau={tau}");
                let report = coset_order_report(&desc, &x).unwrap();
                assert!(!report.all_p_power);
            }
        }
    }
}

#[test]
fn order_p2_finder_agrees_with_brute_force() {
    let mut rng = sample_rng(2025, 0);
    for p in [3u32, 5, 7] {
        for n in 2 * p..=3 * p - 1 {
            let desc = build_sylow(p, n).unwrap();
            for trial in 0..TRIALS_PER_CASE {
                let x = random_p_cycle(&desc, &mut rng).unwrap();
                let (tau, _) = tau_breaking_order_p(&desc, &x)
                    .unwrap_or_else(|e| panic!("p={p} n={n} trial {trial}: {e}"));
                assert!(desc.contains(&tau));
                let product = x.compose(&tau).unwrap();
                assert_ne!(product.order().unwrap(), p as u64);
                let report = coset_order_report(&desc, &x).unwrap();
                assert!(!report.all_p_power);
            }
        }
    }
}

#[test]
fn double_cycle_finder_agrees_with_brute_force() {
    let mut rng = sample_rng(2026, 0);
    for p in [3u32, 5, 7] {
        let n = 2 * p;
        let desc = build_sylow(p, n).unwrap();
        for trial in 0..TRIALS_PER_CASE {
            let x = random_double_p_cycle(&desc, &mut rng);
            let (tau, _) = tau_breaking_p_power(&desc, &x)
                .unwrap_or_else(|e| panic!("p={p} n={n} trial {trial}: {e}"));
            assert!(desc.contains(&tau));
            let product = x.compose(&tau).unwrap();
            assert_ne!(product.order().unwrap(), p as u64);
            let report = coset_order_report(&desc, &x).unwrap();
            assert!(!report.all_p_power);
        }
    }
}

/// Exhaustive order sweep: nonidentity `p`-power-order elements of `A_n`
/// are `p`-cycles (for `n ≤ 2p−1`) or `p`-cycles and double `p`-cycles
/// (for `2p ≤ n ≤ 3p−1`), so "order ≠ p" excludes all `p`-powers.
#[test]
fn p_power_elements_have_the_two_known_shapes() {
    for (p, n) in [(3u32, 4u32), (3, 5), (3, 6), (3, 7), (3, 8), (5, 9), (5, 10)] {
        let mut images: Vec<u32> = (1..=n).collect();
        let mut parity = Parity::Even;
        let mut checked = 0u64;
        loop {
            if parity.is_even() {
                let g = Permutation::from_images(images.clone()).unwrap();
                let order = g.order().unwrap();
                let mut o = order;
                while o.is_multiple_of(p as u64) {
                    o /= p as u64;
                }
                if o == 1 && order > 1 {
                    let ty = g.cycle_type();
                    let parts = ty.parts();
                    let p_parts = parts.iter().filter(|&&q| q == p).count();
                    let ones = parts.iter().filter(|&&q| q == 1).count();
                    assert_eq!(p_parts + ones, parts.len(), "unexpected shape {ty}");
                    assert!(p_parts == 1 || p_parts == 2);
                    if n < 2 * p {
                        assert_eq!(p_parts, 1);
                    }
                    checked += 1;
                }
            }
            if !lex::next_permutation_tracked(&mut images, &mut parity) {
                break;
            }
        }
        assert!(checked > 0, "no p-power elements seen for p={p}, n={n}");
    }
}
