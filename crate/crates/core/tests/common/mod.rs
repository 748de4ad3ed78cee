#![allow(dead_code)]

use proptest::prelude::*;
use stochtop::sampler::{lm_sample, mp_sample, stream_rng, MultiParameter};
use stochtop::SimplicialComplex;

/// Face closure of up to ten random simplices on at most eight vertices.
pub fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=8).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n as u32, 1..=4), 1..10).prop_map(move |sets| {
            SimplicialComplex::from_simplices(n, sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap()
        })
    })
}

/// A sampled multi-parameter complex on up to ten vertices.
pub fn sampled_complex() -> impl Strategy<Value = SimplicialComplex> {
    (4usize..=10, prop::collection::vec(0.0f64..=1.0, 3..=4), any::<u64>()).prop_map(|(n, mut p, seed)| {
        p[0] = 1.0;
        let mp = MultiParameter::new(p).unwrap();
        mp_sample(n, &mp, mp.max_dim(), &mut stream_rng(seed, 0)).unwrap()
    })
}

/// A Linial–Meshulam complex with `d = 2`.
pub fn lm2(n: usize, c: f64, seed: u64) -> SimplicialComplex {
    lm_sample(n, 2, c / n as f64, &mut stream_rng(seed, 0)).unwrap()
}

/// The same complex with vertices renamed by `perm`.
pub fn relabel(x: &SimplicialComplex, perm: &[u32]) -> SimplicialComplex {
    let simplices: Vec<Vec<u32>> = x
        .maximal_simplices()
        .iter()
        .map(|s| {
            let mut v: Vec<u32> = s.vertices().iter().map(|&u| perm[u as usize]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    SimplicialComplex::from_simplices(x.n(), simplices).unwrap()
}
