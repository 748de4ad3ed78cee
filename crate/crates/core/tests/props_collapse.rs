mod common;

use common::{lm2, sampled_complex};
use proptest::prelude::*;
use stochtop::betti::{betti_number, betti_numbers, morse_lower_bound, BettiOptions};
use stochtop::collapse::{betti_lower_bound, collapse_round, collapse_rounds, d_functional, maximal_k_count, strip};
use stochtop::traversal::ball;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collapses_keep_betti_numbers(x in sampled_complex(), k in 0usize..2) {
        let before = betti_numbers(&x, BettiOptions::default()).unwrap();
        let mut cur = x.clone();
        for _ in 0..3 {
            let (next, _) = collapse_round(&cur, k);
            let mut after = betti_numbers(&next, BettiOptions::default()).unwrap();
            after.resize(before.len(), 0);
            prop_assert_eq!(&after, &before);
            prop_assert!(next.f(k as isize) <= cur.f(k as isize));
            cur = next;
        }
    }

    #[test]
    fn maximal_count_identity(x in sampled_complex(), k in 0usize..2, l in 0usize..4) {
        let (r, _) = collapse_rounds(&x, k, l);
        let s = strip(&x, k, l);
        let k_ = k as isize;
        let rhs = x.f(k_) as i64 - x.f(k_ + 1) as i64 + s.f(k_ + 1) as i64 - s.f(k_) as i64;
        prop_assert_eq!(maximal_k_count(&r, k) as i64, rhs);
    }
}

#[test]
fn lower_bounds_hold_on_200_instances() {
    for seed in 0..200u64 {
        let n = 8 + (seed % 9) as usize;
        let c = 0.5 + (seed % 7) as f64 * 0.6;
        let x = lm2(n, c, seed);
        let b = betti_number(&x, 1).unwrap() as i64;
        assert!(morse_lower_bound(&x, 1) <= b, "seed {seed}");
        for l in 0..4 {
            assert!(betti_lower_bound(&x, 1, l) <= b, "seed {seed} l {l}");
        }
    }
}

#[test]
fn d_functional_is_local() {
    for seed in 0..12 {
        let x = lm2(16, 2.0, seed);
        for tau in x.level(1).iter().step_by(9) {
            for l in 0..3 {
                let b = ball(&x, tau, l + 2).unwrap();
                let global = d_functional(&x, tau, l, 1).unwrap();
                let local = d_functional(&b.complex, tau, l, 1).unwrap();
                assert_eq!(global, local, "seed {seed} tau {tau:?} l {l}");
            }
        }
    }
}
