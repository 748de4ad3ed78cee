//! Synchronous collapses `R_k`, stripped complexes `S_k^l`, and the Betti
//! lower bound they feed.
//!
//! A `k`-simplex is free when exactly one maximal simplex strictly contains
//! it. For the `(k, k+1)` collapses used here that means: degree 1, with the
//! unique coface maximal. Freeness is evaluated on the stored complex, so a
//! dimension cap is part of the input.

use serde::Serialize;

use crate::complex::{CofaceIndex, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Pairs removed by the collapse rounds: `((k+1)-simplex, its chosen free face)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CollapseTrace {
    pub removed: Vec<Vec<(Simplex, Simplex)>>,
    pub rounds: usize,
}

/// One round of `R_k`: every maximal `(k+1)`-simplex with a free `k`-face
/// is removed together with its lexicographically smallest free face.
pub fn collapse_round(x: &SimplicialComplex, k: usize) -> (SimplicialComplex, CollapseTrace) {
    let (y, pairs) = round(x, k);
    (y, CollapseTrace { removed: vec![pairs], rounds: 1 })
}

fn round(x: &SimplicialComplex, k: usize) -> (SimplicialComplex, Vec<(Simplex, Simplex)>) {
    if (x.dim()) < k as isize + 1 {
        return (x.clone(), Vec::new());
    }
    let down = CofaceIndex::build(x, k);
    let up_maximal: Vec<bool> = if x.dim() > k as isize + 1 {
        let up = CofaceIndex::build(x, k + 1);
        (0..x.f(k as isize + 1)).map(|j| up.degree(j) == 0).collect()
    } else {
        vec![true; x.f(k as isize + 1)]
    };
    // smallest free face per coface; faces are scanned in increasing order
    let mut chosen: Vec<Option<u32>> = vec![None; x.f(k as isize + 1)];
    for t in 0..x.f(k as isize) {
        if down.degree(t) == 1 {
            let s = down.cofaces(t)[0] as usize;
            if up_maximal[s] && chosen[s].is_none() {
                chosen[s] = Some(t as u32);
            }
        }
    }
    let mut keep: Vec<Vec<bool>> = x.levels().iter().map(|l| vec![true; l.len()]).collect();
    let mut pairs = Vec::new();
    for (s, t) in chosen.iter().enumerate() {
        if let Some(t) = *t {
            keep[k + 1][s] = false;
            keep[k][t as usize] = false;
            pairs.push((Simplex::from(x.level(k + 1).get(s)), Simplex::from(x.level(k).get(t as usize))));
        }
    }
    (x.retain(&keep), pairs)
}

/// `R_k^l(X)` with the pairs removed in every round.
pub fn collapse_rounds(x: &SimplicialComplex, k: usize, l: usize) -> (SimplicialComplex, CollapseTrace) {
    let mut cur = x.clone();
    let mut trace = CollapseTrace::default();
    for _ in 0..l {
        let (next, pairs) = round(&cur, k);
        trace.rounds += 1;
        let done = pairs.is_empty();
        trace.removed.push(pairs);
        cur = next;
        if done {
            break;
        }
    }
    (cur, trace)
}

/// `S_k^l(X)`: `R_k^l(X)` without its maximal `k`-simplices.
pub fn strip(x: &SimplicialComplex, k: usize, l: usize) -> SimplicialComplex {
    let (r, _) = collapse_rounds(x, k, l);
    remove_maximal(&r, k)
}

fn remove_maximal(x: &SimplicialComplex, k: usize) -> SimplicialComplex {
    if x.f(k as isize) == 0 {
        return x.clone();
    }
    let mut keep: Vec<Vec<bool>> = x.levels().iter().map(|l| vec![true; l.len()]).collect();
    if (k as isize) < x.dim() {
        let idx = CofaceIndex::build(x, k);
        for (t, kp) in keep[k].iter_mut().enumerate() {
            *kp = idx.degree(t) > 0;
        }
    } else {
        keep[k].iter_mut().for_each(|b| *b = false);
    }
    x.retain(&keep)
}

/// `I_k`: number of maximal `k`-simplices.
pub fn maximal_k_count(x: &SimplicialComplex, k: usize) -> usize {
    let fk = x.f(k as isize);
    if (k as isize) >= x.dim() {
        return fk;
    }
    let idx = CofaceIndex::build(x, k);
    (0..fk).filter(|&t| idx.degree(t) == 0).count()
}

/// `D_k^{(l)}` at `τ`: 0 if `τ` is not in `S_k^l(X)`, else
/// `deg(S_k^l(X); τ) / (k+2) - 1`.
pub fn d_functional(x: &SimplicialComplex, tau: &[u32], l: usize, k: usize) -> Result<f64> {
    if tau.len() != k + 1 || !x.contains(tau) {
        return Err(Error::MissingSimplex(tau.to_vec()));
    }
    let s = strip(x, k, l);
    if !s.contains(tau) {
        return Ok(0.0);
    }
    Ok(s.degree(tau)? as f64 / (k + 2) as f64 - 1.0)
}

/// `Σ_τ D_k^{(l)}` over `F_k(X)`.
pub fn d_functional_sum(x: &SimplicialComplex, k: usize, l: usize) -> f64 {
    let s = strip(x, k, l);
    if s.f(k as isize) == 0 {
        return 0.0;
    }
    let deg_total = (k + 2) * s.f(k as isize + 1);
    deg_total as f64 / (k + 2) as f64 - s.f(k as isize) as f64
}

/// `f_k - f_{k+1} - f_{k-1} + f_{k+1}(S_k^l) - f_k(S_k^l)`, a lower bound
/// for `β_k`. The last two terms are the sum of `D_k^{(l)}` over `F_k(X)`.
pub fn betti_lower_bound(x: &SimplicialComplex, k: usize, l: usize) -> i64 {
    let s = strip(x, k, l);
    let k = k as isize;
    x.f(k) as i64 - x.f(k + 1) as i64 - x.f(k - 1) as i64 + s.f(k + 1) as i64 - s.f(k) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{betti_numbers, BettiOptions};

    fn cx(n: usize, s: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn rounds() {
        let filled = cx(3, &[&[0, 1, 2]]);
        let (r, tr) = collapse_round(&filled, 1);
        assert_eq!(r, cx(3, &[&[0, 2], &[1, 2]]));
        assert_eq!(tr.removed[0], vec![(Simplex::from(&[0, 1, 2][..]), Simplex::from(&[0, 1][..]))]);
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(collapse_round(&hollow, 1).0, hollow);
        let pair = cx(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let (r, tr) = collapse_round(&pair, 1);
        assert_eq!(tr.removed[0].len(), 2);
        assert_eq!(r.f(2), 0);
        // a face of a tetrahedron is never free for R_1
        let tet = SimplicialComplex::full(4, 3);
        assert_eq!(collapse_round(&tet, 1).0, tet);
    }

    #[test]
    fn strips_and_counts() {
        let filled = cx(3, &[&[0, 1, 2]]);
        assert_eq!(strip(&filled, 1, 1).f(1), 0);
        assert_eq!(strip(&filled, 1, 0), filled);
        let edge = cx(2, &[&[0, 1]]);
        assert_eq!(strip(&edge, 1, 0).f(1), 0);
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(maximal_k_count(&hollow, 1), 3);
        assert_eq!(maximal_k_count(&filled, 1), 0);
        assert_eq!(maximal_k_count(&collapse_round(&filled, 1).0, 1), 2);
    }

    #[test]
    fn functional_and_bound() {
        let filled = cx(3, &[&[0, 1, 2]]);
        assert!((d_functional(&filled, &[0, 1], 0, 1).unwrap() + 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(d_functional(&filled, &[0, 1], 1, 1).unwrap(), 0.0);
        assert_eq!(betti_lower_bound(&filled, 1, 0), -3);
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(betti_lower_bound(&hollow, 1, 0), 0);
        let sum: f64 = filled.level(1).iter().map(|t| d_functional(&filled, t, 0, 1).unwrap()).sum();
        assert!((sum - d_functional_sum(&filled, 1, 0)).abs() < 1e-12);
        let b = betti_numbers(&hollow, BettiOptions::default()).unwrap();
        assert!(betti_lower_bound(&hollow, 1, 3) <= b[1] as i64);
    }
}
