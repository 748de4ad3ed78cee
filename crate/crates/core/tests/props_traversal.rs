mod common;

use common::{lm2, relabel, sampled_complex};
use proptest::prelude::*;
use stochtop::traversal::{ball, bfs_traverse, canonical_code, code_of_ball, is_tree_neighborhood, local_distance};
use stochtop::RootedComplex;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traversal_is_deterministic_and_counts_faces(x in sampled_complex(), k in 0usize..2, pick in any::<prop::sample::Index>()) {
        prop_assume!(x.f(k as isize) > 0);
        let tau = x.level(k).get(pick.index(x.f(k as isize))).to_vec();
        let a = bfs_traverse(&x, &tau, k, None).unwrap();
        let b = bfs_traverse(&x, &tau, k, None).unwrap();
        prop_assert_eq!(&a, &b);
        let total: usize = a.m.iter().sum();
        prop_assert_eq!(a.tree.f(k as isize), 1 + (k + 1) * total);
        prop_assert_eq!(a.tree.f(k as isize + 1), total);
        prop_assert_eq!(a.discovered.len(), 1 + (k + 1) * total);
        prop_assert!(a.stop() <= a.tree.f(k as isize));
    }

    #[test]
    fn codes_ignore_labels(x in sampled_complex(), k in 0usize..2, l in 0usize..3, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        prop_assume!(x.f(k as isize) > 0);
        let tau = x.level(k).get(pick.index(x.f(k as isize))).to_vec();
        let mut perm: Vec<u32> = (0..x.n() as u32).collect();
        let mut rng = stochtop::sampler::stream_rng(seed, 0);
        use rand::seq::SliceRandom;
        perm.shuffle(&mut rng);
        let y = relabel(&x, &perm);
        let mut image: Vec<u32> = tau.iter().map(|&v| perm[v as usize]).collect();
        image.sort_unstable();
        let a = code_of_ball(&ball(&x, &tau, l).unwrap()).unwrap();
        let b = code_of_ball(&ball(&y, &image, l).unwrap()).unwrap();
        prop_assume!(a.exact && b.exact);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn tree_records_code_like_balls() {
    let mut seen = 0;
    for seed in 0..40 {
        let x = lm2(30, 1.0, seed);
        for tau in x.level(1).iter().step_by(7) {
            let rec = bfs_traverse(&x, tau, 1, None).unwrap();
            if !is_tree_neighborhood(&rec) {
                continue;
            }
            let full = ball(&x, tau, usize::MAX).unwrap();
            let tree = RootedComplex::new(rec.tree.clone(), stochtop::Simplex::from(tau)).unwrap();
            if rec.tree.f_vector() == full.complex.f_vector() {
                assert_eq!(code_of_ball(&full).unwrap(), canonical_code(&tree, usize::MAX).unwrap());
                seen += 1;
            }
        }
    }
    assert!(seen > 50, "only {seen} tree neighborhoods");
}

#[test]
fn local_distance_is_ultrametric() {
    let mut rooted = Vec::new();
    for seed in 0..4 {
        let x = lm2(14, 1.5, seed);
        for tau in x.level(1).iter().step_by(11).take(4) {
            rooted.push(RootedComplex::new(x.clone(), stochtop::Simplex::from(tau)).unwrap());
        }
    }
    let n = rooted.len();
    let mut d = vec![vec![f64::NAN; n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = local_distance(&rooted[i], &rooted[j]).unwrap_or(f64::NAN);
        }
    }
    let mut checked = 0;
    for a in 0..n {
        assert!(d[a][a] == 0.0 || d[a][a].is_nan());
        for b in 0..n {
            assert!(d[a][b].is_nan() || d[a][b] == d[b][a]);
            for c in 0..n {
                let (ac, ab, bc) = (d[a][c], d[a][b], d[b][c]);
                if ac.is_nan() || ab.is_nan() || bc.is_nan() {
                    continue;
                }
                assert!(ac <= ab.max(bc), "d({a},{c})={ac} > max({ab}, {bc})");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}
