mod common;

use common::{sampled_complex, small_complex};
use proptest::prelude::*;
use stochtop::betti::{rank_mod_p, P1, P2};
use stochtop::betti::{betti_numbers, coboundary_matrix, components, BettiOptions};
use stochtop::codec::{emit_complex, parse_complex};
use stochtop::complex::CofaceIndex;

proptest! {
    #[test]
    fn closed_under_faces(x in small_complex()) {
        prop_assert!(x.is_closed());
        for s in x.simplices() {
            let s = stochtop::Simplex::new(s.to_vec()).unwrap();
            for j in 0..s.dim() {
                for f in s.faces(j).unwrap() {
                    prop_assert!(x.contains(f.vertices()));
                }
            }
        }
    }

    #[test]
    fn degrees_double_count(x in sampled_complex()) {
        for k in 0..x.dim().max(0) as usize {
            let idx = CofaceIndex::build(&x, k);
            let total: usize = (0..x.f(k as isize)).map(|i| idx.degree(i)).sum();
            prop_assert_eq!(total, (k + 2) * x.f(k as isize + 1));
        }
    }

    #[test]
    fn codec_round_trip(x in small_complex()) {
        prop_assert_eq!(parse_complex(&emit_complex(&x)).unwrap(), x);
    }

    #[test]
    fn euler_poincare(x in sampled_complex()) {
        let b = betti_numbers(&x, BettiOptions::default()).unwrap();
        let alt: i64 = b.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, x.euler_reduced());
    }

    #[test]
    fn coboundary_squares_to_zero(x in sampled_complex()) {
        for k in 0..x.dim() {
            let lo = coboundary_matrix(&x, k - 1).unwrap();
            let hi = coboundary_matrix(&x, k).unwrap();
            prop_assert!(hi.product_nonzeros(&lo).is_empty(), "d_{k} d_{} != 0", k - 1);
        }
    }

    #[test]
    fn primes_agree(x in sampled_complex()) {
        for k in 0..x.dim() {
            let m = coboundary_matrix(&x, k).unwrap();
            prop_assert_eq!(rank_mod_p(&m, P1), rank_mod_p(&m, P2));
        }
    }

    #[test]
    fn reduced_beta0_counts_components(x in small_complex()) {
        let b = betti_numbers(&x, BettiOptions::default()).unwrap();
        prop_assert_eq!(b[0] + 1, components(&x));
    }
}
