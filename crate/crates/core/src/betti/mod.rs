//! Coboundary matrices of the augmented cochain complex and reduced Betti
//! numbers `β_k = f_k - rank d_k - rank d_{k-1}`.

pub mod dsu;
pub mod field;
pub mod rank;

pub use dsu::Dsu;
pub use field::{Field, P1, P2};
pub use rank::{rank_checked, rank_mod_p, RankCheck, RankReport, SparseSignMatrix};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// `d_k`: rows are `(k+1)`-simplices, columns `k`-simplices, entry
/// `(-1)^i` where the column is the row with its `i`-th vertex removed.
/// `k = -1` gives the all-ones column over the vertices.
pub fn coboundary_matrix(x: &SimplicialComplex, k: isize) -> Result<SparseSignMatrix> {
    if k < -1 || k > x.dim() {
        return Err(Error::InvalidParameter(format!("coboundary degree {k} outside -1..={}", x.dim())));
    }
    if k == -1 {
        let mut m = SparseSignMatrix::builder(1);
        for _ in 0..x.f(0) {
            m.push_row([(0u32, 1i8)]);
        }
        return Ok(m);
    }
    let k = k as usize;
    let cols = x.level(k);
    let rows = x.level(k + 1);
    let mut m = SparseSignMatrix::builder(cols.len());
    let mut face = Vec::with_capacity(k + 1);
    let mut entries = Vec::with_capacity(k + 2);
    for s in rows.iter() {
        entries.clear();
        for i in 0..s.len() {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
            let c = cols.position(&face).expect("complex is face-closed");
            entries.push((c as u32, if i % 2 == 0 { 1i8 } else { -1 }));
        }
        m.push_row(entries.iter().copied());
    }
    Ok(m)
}

/// Number of connected components of the 1-skeleton.
pub fn components(x: &SimplicialComplex) -> usize {
    let verts = x.level(0);
    let mut dsu = Dsu::new(verts.len());
    for e in x.level(1).iter() {
        let a = verts.position(&e[..1]).unwrap() as u32;
        let b = verts.position(&e[1..]).unwrap() as u32;
        dsu.union(a, b);
    }
    dsu.sets()
}

/// How ranks of `d_k`, `k >= 1`, are certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub check: RankCheck,
    pub seed: u64,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { check: RankCheck::TwoPrime, seed: 0x5eed }
    }
}

/// `rank d_k` over `GF(P1)`; exact for `k <= 0`.
pub fn coboundary_rank(x: &SimplicialComplex, k: isize, opts: BettiOptions) -> Result<usize> {
    if k < -1 {
        return Ok(0);
    }
    if k == -1 {
        return Ok(usize::from(x.f(0) > 0));
    }
    if k > x.dim() || x.f(k + 1) == 0 {
        return Ok(0);
    }
    if k == 0 {
        return Ok(x.f(0) - components(x));
    }
    let m = coboundary_matrix(x, k)?;
    Ok(rank_checked(&m, opts.check, opts.seed)?.rank)
}

fn require_level(x: &SimplicialComplex, k: usize) -> Result<()> {
    match x.cap() {
        Some(cap) if cap < k + 1 => Err(Error::InsufficientCap { cap, needed: k + 1 }),
        _ => Ok(()),
    }
}

/// Reduced `β_k`.
pub fn betti_number_with(x: &SimplicialComplex, k: usize, opts: BettiOptions) -> Result<usize> {
    require_level(x, k)?;
    let k = k as isize;
    let f = x.f(k);
    if f == 0 {
        return Ok(0);
    }
    let b = f as i64 - coboundary_rank(x, k, opts)? as i64 - coboundary_rank(x, k - 1, opts)? as i64;
    if b < 0 {
        return Err(Error::Numeric(format!("negative Betti number {b} in degree {k}")));
    }
    Ok(b as usize)
}

pub fn betti_number(x: &SimplicialComplex, k: usize) -> Result<usize> {
    betti_number_with(x, k, BettiOptions::default())
}

/// All reduced Betti numbers `β_0..β_{dim}` (or up to the cap minus one).
pub fn betti_numbers(x: &SimplicialComplex, opts: BettiOptions) -> Result<Vec<usize>> {
    let top = match x.cap() {
        Some(cap) => (cap as isize - 1).min(x.dim()),
        None => x.dim(),
    };
    let ranks: Vec<usize> = (-1..=top).map(|k| coboundary_rank(x, k, opts)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..=top {
        let b = x.f(k) as i64 - ranks[k as usize + 1] as i64 - ranks[k as usize] as i64;
        if b < 0 {
            return Err(Error::Numeric(format!("negative Betti number {b} in degree {k}")));
        }
        out.push(b as usize);
    }
    Ok(out)
}

/// `dim Z^k = f_k - rank d_k`.
pub fn cocycle_dim(x: &SimplicialComplex, k: usize) -> Result<usize> {
    require_level(x, k)?;
    Ok(x.f(k as isize) - coboundary_rank(x, k as isize, BettiOptions::default())?)
}

pub fn cocycle_dim_with(x: &SimplicialComplex, k: usize, opts: BettiOptions) -> Result<usize> {
    require_level(x, k)?;
    Ok(x.f(k as isize) - coboundary_rank(x, k as isize, opts)?)
}

/// `f_k - f_{k+1} - f_{k-1}`, a lower bound for `β_k`.
pub fn morse_lower_bound(x: &SimplicialComplex, k: usize) -> i64 {
    let k = k as isize;
    x.f(k) as i64 - x.f(k + 1) as i64 - x.f(k - 1) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, s: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn coboundaries() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let d0 = coboundary_matrix(&hollow, 0).unwrap();
        assert_eq!((d0.nrows(), d0.ncols()), (3, 3));
        assert_eq!(rank_mod_p(&d0, P1), 2);
        let dm1 = coboundary_matrix(&hollow, -1).unwrap();
        assert_eq!(rank_mod_p(&dm1, P1), 1);
        let filled = cx(3, &[&[0, 1, 2]]);
        let d1 = coboundary_matrix(&filled, 1).unwrap();
        assert_eq!(d1.to_dense(), vec![vec![1, -1, 1]]);
        assert!(coboundary_matrix(&filled, 3).is_err());
    }

    #[test]
    fn betti_examples() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(betti_number(&hollow, 0).unwrap(), 0);
        assert_eq!(betti_number(&hollow, 1).unwrap(), 1);
        let points = cx(5, &[&[0], &[1], &[2], &[3], &[4]]);
        assert_eq!(betti_number(&points, 0).unwrap(), 4);
        let sphere = cx(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(betti_numbers(&sphere, BettiOptions::default()).unwrap(), vec![0, 0, 1]);
        assert_eq!(cocycle_dim(&hollow, 1).unwrap(), 3);
        assert_eq!(cocycle_dim(&cx(3, &[&[0, 1, 2]]), 1).unwrap(), 2);
        assert_eq!(cocycle_dim(&cx(1, &[&[0]]), 0).unwrap(), 1);
        let capped = SimplicialComplex::full(6, 5).skeleton(1);
        assert!(matches!(betti_number(&capped, 1), Err(Error::InsufficientCap { .. })));
    }

    #[test]
    fn morse_bounds() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(morse_lower_bound(&hollow, 1), 0);
        let full = SimplicialComplex::full(4, 3);
        assert_eq!(morse_lower_bound(&full, 1), -2);
    }
}
