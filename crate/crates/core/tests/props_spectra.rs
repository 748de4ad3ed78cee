mod common;

use common::{lm2, sampled_complex};
use proptest::prelude::*;
use stochtop::betti::cocycle_dim;
use stochtop::spectra::{
    esd, esd_with, kolmogorov_distance_tol, measure_moment, rooted_spectral_measure, walk_moment, zero_mass, EsdOptions,
    SpectralMeasure, ZERO_TOL,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_mass_is_cocycle_fraction(x in sampled_complex(), k in 0usize..2) {
        prop_assume!(x.f(k as isize) > 0);
        let mu = esd(&x, k).unwrap();
        let fk = x.f(k as isize);
        let z = cocycle_dim(&x, k).unwrap();
        prop_assert_eq!(zero_mass(&mu, ZERO_TOL), z as f64 / fk as f64);
        prop_assert!((mu.total_mass() - 1.0).abs() <= 1e-10);
        prop_assert!(mu.atoms().iter().all(|a| a.0 >= -1e-8));
        let trace = (k + 2) as f64 * x.f(k as isize + 1) as f64 / fk as f64;
        prop_assert!((mu.mean() - trace).abs() <= 1e-8);
    }

    #[test]
    fn esd_is_mean_of_rooted_measures(x in sampled_complex(), k in 0usize..2) {
        prop_assume!(x.f(k as isize) > 0);
        let rooted: Vec<SpectralMeasure> =
            x.level(k).iter().map(|t| rooted_spectral_measure(&x, t, k).unwrap()).collect();
        let avg = SpectralMeasure::average(&rooted).unwrap();
        let mu = esd(&x, k).unwrap();
        prop_assert!(kolmogorov_distance_tol(&avg, &mu, 1e-7) <= 1e-9);
    }

    #[test]
    fn moments_are_return_walks(x in sampled_complex(), k in 0usize..2) {
        prop_assume!(x.f(k as isize) > 0);
        for t in x.level(k).iter().take(6) {
            let mu = rooted_spectral_measure(&x, t, k).unwrap();
            for m in 0..=4 {
                let w = walk_moment(&x, t, k, m).unwrap();
                prop_assert!((measure_moment(&mu, m) - w).abs() <= 1e-8 * w.max(1.0), "m={} {} vs {}", m, measure_moment(&mu, m), w);
            }
        }
    }
}

#[test]
fn lanczos_path_keeps_exact_zero_mass() {
    let x = lm2(40, 2.0, 5);
    let opts = EsdOptions { eigen_cap: 8, ..EsdOptions::default() };
    let rep = esd_with(&x, 1, &opts).unwrap();
    assert!(rep.lanczos_blocks > 0);
    let z = cocycle_dim(&x, 1).unwrap();
    assert_eq!(rep.zero_count, z);
    assert_eq!(zero_mass(&rep.measure, ZERO_TOL), z as f64 / x.f(1) as f64);
}
