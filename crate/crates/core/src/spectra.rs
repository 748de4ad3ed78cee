//! Up-Laplacians `L = Bᵀ B` on `k`-cochains (with `B` the coboundary
//! matrix), their empirical spectral distributions and rooted spectral
//! measures.
//!
//! Spectra are computed per connected block of `B`. A block is solved
//! densely on the smaller of its two Gram sides when that side is at most
//! the eigensolver cap; larger blocks fall back to stochastic Lanczos
//! quadrature. In both cases the atom at zero comes from the exact rank of
//! the block over a prime field.

use faer::{Mat, Side};
use rand::Rng;
use serde::Serialize;

use crate::betti::{coboundary_matrix, rank_checked, BettiOptions, Dsu, SparseSignMatrix};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::sampler::stream_rng;

/// Largest Gram side solved densely.
pub const EIGEN_CAP: usize = 5000;

/// Zero threshold for eigenvalues, relative to the matrix max-norm.
pub const ZERO_TOL: f64 = 1e-7;

/// Finitely supported probability measure on the real line, atoms sorted by
/// location.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralMeasure {
    atoms: Vec<(f64, f64)>,
}

impl SpectralMeasure {
    /// Sorts the atoms; masses must be non-negative and sum to 1.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.iter().any(|a| !a.0.is_finite() || !(a.1 >= 0.0)) {
            return Err(Error::Numeric("non-finite atom or negative mass".into()));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Numeric(format!("total mass {total} differs from 1")));
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(SpectralMeasure { atoms })
    }

    pub fn dirac(x: f64) -> Self {
        SpectralMeasure { atoms: vec![(x, 1.0)] }
    }

    /// Uniform measure on the given values (with multiplicity).
    pub fn uniform(values: &[f64]) -> Result<Self> {
        let w = 1.0 / values.len() as f64;
        Self::new(values.iter().map(|&v| (v, w)).collect())
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn mean(&self) -> f64 {
        measure_moment(self, 1)
    }

    /// `μ((-∞, x])`.
    pub fn cdf(&self, x: f64) -> f64 {
        let end = self.atoms.partition_point(|a| a.0 <= x);
        self.atoms[..end].iter().map(|a| a.1).sum()
    }

    /// Equal-weight mixture.
    pub fn average(measures: &[SpectralMeasure]) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::InvalidParameter("average of no measures".into()));
        }
        let w = 1.0 / measures.len() as f64;
        let atoms = measures.iter().flat_map(|m| m.atoms.iter().map(move |&(x, p)| (x, p * w))).collect();
        Self::new(atoms)
    }

    /// Clusters atoms whose consecutive gaps are at most `tol`; each cluster
    /// sits at its mass-weighted mean.
    pub fn merged(&self, tol: f64) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        let mut moment = 0.0;
        for &(x, p) in &self.atoms {
            match out.last_mut() {
                Some(c) if x - last <= tol => {
                    moment += x * p;
                    c.1 += p;
                    if c.1 > 0.0 {
                        c.0 = moment / c.1;
                    }
                }
                _ => {
                    moment = x * p;
                    out.push((x, p));
                }
            }
            last = x;
        }
        SpectralMeasure { atoms: out }
    }
}

/// `∫ x^m dμ`.
pub fn measure_moment(mu: &SpectralMeasure, m: u32) -> f64 {
    mu.atoms.iter().map(|&(x, p)| p * x.powi(m as i32)).sum()
}

/// Mass of the atoms with `|λ| <= tol`.
pub fn zero_mass(mu: &SpectralMeasure, tol: f64) -> f64 {
    mu.atoms.iter().filter(|a| a.0.abs() <= tol).map(|a| a.1).sum()
}

/// `sup_x |F1(x) - F2(x)|`.
pub fn kolmogorov_distance(a: &SpectralMeasure, b: &SpectralMeasure) -> f64 {
    kolmogorov_distance_tol(a, b, 0.0)
}

/// Kolmogorov distance after jointly clustering the atoms of both measures
/// whose consecutive gaps are at most `tol`, so that the same eigenvalue
/// computed twice with rounding noise does not register as a jump.
pub fn kolmogorov_distance_tol(a: &SpectralMeasure, b: &SpectralMeasure, tol: f64) -> f64 {
    let mut all: Vec<(f64, f64)> = a
        .atoms
        .iter()
        .map(|&(x, p)| (x, p))
        .chain(b.atoms.iter().map(|&(x, p)| (x, -p)))
        .collect();
    all.sort_by(|u, v| u.0.total_cmp(&v.0));
    let (mut diff, mut best) = (0.0f64, 0.0f64);
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        diff += all[i].1;
        while j + 1 < all.len() && all[j + 1].0 - all[j].0 <= tol {
            j += 1;
            diff += all[j].1;
        }
        best = best.max(diff.abs());
        i = j + 1;
    }
    best.min(1.0)
}

/// The up-Laplacian `Bᵀ B` of level `k`, kept in factored sparse form.
#[derive(Clone, Debug)]
pub struct UpLaplacian {
    b: SparseSignMatrix,
    bt: SparseSignMatrix,
}

pub fn up_laplacian(x: &SimplicialComplex, k: usize) -> Result<UpLaplacian> {
    if x.f(k as isize) == 0 {
        return Err(Error::InvalidParameter(format!("no {k}-simplices")));
    }
    let b = if (k as isize) < x.dim() {
        coboundary_matrix(x, k as isize)?
    } else {
        SparseSignMatrix::from_rows(x.f(k as isize), &[])
    };
    Ok(UpLaplacian::from_coboundary(b))
}

impl UpLaplacian {
    pub fn from_coboundary(b: SparseSignMatrix) -> Self {
        let bt = b.transpose();
        UpLaplacian { b, bt }
    }

    pub fn dim(&self) -> usize {
        self.b.ncols()
    }

    pub fn coboundary(&self) -> &SparseSignMatrix {
        &self.b
    }

    /// `out = L v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        let mut tmp = vec![0.0; self.b.nrows()];
        mat_vec(&self.b, v, &mut tmp);
        mat_vec(&self.bt, &tmp, out);
    }

    pub fn to_dense(&self) -> Mat<f64> {
        gram(&self.b, false)
    }

    /// Largest absolute entry, which is the largest degree (or 1 on an
    /// otherwise empty coboundary with off-diagonal entries).
    pub fn max_norm(&self) -> f64 {
        let mut m = 0usize;
        for i in 0..self.bt.nrows() {
            m = m.max(self.bt.row_len(i));
        }
        m.max(usize::from(self.b.nnz() > 0)) as f64
    }
}

fn mat_vec(m: &SparseSignMatrix, v: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = m.row(i).map(|(c, s)| if s > 0 { v[c as usize] } else { -v[c as usize] }).sum();
    }
}

/// `Bᵀ B` (`rows_side = false`) or `B Bᵀ` as a dense matrix.
fn gram(b: &SparseSignMatrix, rows_side: bool) -> Mat<f64> {
    let t;
    let m = if rows_side {
        t = b.transpose();
        &t
    } else {
        b
    };
    let n = m.ncols();
    let mut g = Mat::<f64>::zeros(n, n);
    for r in 0..m.nrows() {
        let row: Vec<(u32, i8)> = m.row(r).collect();
        for &(a, sa) in &row {
            for &(c, sc) in &row {
                g[(a as usize, c as usize)] += (sa * sc) as f64;
            }
        }
    }
    g
}

/// Rows and columns of one connected block of a sparse matrix.
struct Block {
    rows: Vec<u32>,
    cols: Vec<u32>,
}

/// Connected blocks of the bipartite row/column incidence; columns with no
/// entries are returned separately.
fn blocks(b: &SparseSignMatrix) -> (Vec<Block>, usize) {
    let mut dsu = Dsu::new(b.ncols());
    for r in 0..b.nrows() {
        let cols = b.row_cols(r);
        for w in cols.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut touched = vec![false; b.ncols()];
    for r in 0..b.nrows() {
        for &c in b.row_cols(r) {
            touched[c as usize] = true;
        }
    }
    let mut slot = vec![u32::MAX; b.ncols()];
    let mut out: Vec<Block> = Vec::new();
    let mut isolated = 0;
    for c in 0..b.ncols() {
        if !touched[c] {
            isolated += 1;
            continue;
        }
        let root = dsu.find(c as u32) as usize;
        if slot[root] == u32::MAX {
            slot[root] = out.len() as u32;
            out.push(Block { rows: Vec::new(), cols: Vec::new() });
        }
        out[slot[root] as usize].cols.push(c as u32);
    }
    for r in 0..b.nrows() {
        if let Some(&c) = b.row_cols(r).first() {
            let root = dsu.find(c) as usize;
            out[slot[root] as usize].rows.push(r as u32);
        }
    }
    (out, isolated)
}

fn sub_block(b: &SparseSignMatrix, block: &Block, col_map: &mut [u32]) -> SparseSignMatrix {
    for (i, &c) in block.cols.iter().enumerate() {
        col_map[c as usize] = i as u32;
    }
    let sub = b.select(&block.rows, col_map, block.cols.len());
    for &c in &block.cols {
        col_map[c as usize] = u32::MAX;
    }
    sub
}

/// Settings for [`esd_with`].
#[derive(Clone, Copy, Debug)]
pub struct EsdOptions {
    /// Largest Gram side solved densely.
    pub eigen_cap: usize,
    /// Lanczos steps per probe vector for blocks above the cap.
    pub lanczos_steps: usize,
    /// Probe vectors per large block.
    pub probes: usize,
    pub seed: u64,
    pub rank: BettiOptions,
}

impl Default for EsdOptions {
    fn default() -> Self {
        EsdOptions { eigen_cap: EIGEN_CAP, lanczos_steps: 200, probes: 4, seed: 0x5eed, rank: BettiOptions::default() }
    }
}

/// An ESD together with how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct EsdReport {
    pub measure: SpectralMeasure,
    /// `dim Z^k = f_k - rank d_k`, from the exact rank.
    pub zero_count: usize,
    pub f_k: usize,
    pub dense_blocks: usize,
    pub lanczos_blocks: usize,
    /// Largest Gram side met.
    pub largest_block: usize,
    /// Disagreements between the float zero count and the exact rank.
    pub diagnostics: Vec<String>,
}

/// Uniform measure on the eigenvalues of `L_k^up`.
pub fn esd(x: &SimplicialComplex, k: usize) -> Result<SpectralMeasure> {
    Ok(esd_with(x, k, &EsdOptions::default())?.measure)
}

pub fn esd_with(x: &SimplicialComplex, k: usize, opts: &EsdOptions) -> Result<EsdReport> {
    let lap = up_laplacian(x, k)?;
    let b = &lap.b;
    let fk = b.ncols();
    let thr = ZERO_TOL * lap.max_norm();
    let w = 1.0 / fk as f64;
    let (blocks, isolated) = blocks(b);
    let mut zeros = isolated;
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    let mut report = EsdReport {
        measure: SpectralMeasure::dirac(0.0),
        zero_count: 0,
        f_k: fk,
        dense_blocks: 0,
        lanczos_blocks: 0,
        largest_block: 0,
        diagnostics: Vec::new(),
    };
    let mut col_map = vec![u32::MAX; fk];
    for (bi, block) in blocks.iter().enumerate() {
        let sub = sub_block(b, block, &mut col_map);
        let (nr, nc) = (sub.nrows(), sub.ncols());
        let side = nr.min(nc);
        report.largest_block = report.largest_block.max(side);
        let rank = block_rank(&sub, opts.rank)?;
        zeros += nc - rank;
        if side <= opts.eigen_cap {
            report.dense_blocks += 1;
            let mut ev = gram(&sub, nr < nc)
                .self_adjoint_eigenvalues(Side::Lower)
                .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
            // eigenvalues of the smaller side; the rest of the block is kernel
            let side_zeros = side - rank;
            let numeric = ev.iter().filter(|&&v| v.abs() <= thr).count();
            if numeric != side_zeros {
                report.diagnostics.push(format!(
                    "block {bi}: {numeric} eigenvalues below {thr:e} but exact kernel dimension {side_zeros}; exact rank used"
                ));
            }
            ev.sort_by(f64::total_cmp);
            atoms.extend(ev[side_zeros..].iter().map(|&v| (v.max(0.0), w)));
        } else {
            report.lanczos_blocks += 1;
            let mut rng = stream_rng(opts.seed, bi as u64);
            let nonzero = lanczos_nonzero_measure(&sub, nr < nc, opts, thr, &mut rng)?;
            let scale = rank as f64 * w;
            atoms.extend(nonzero.into_iter().map(|(v, p)| (v, p * scale)));
        }
    }
    atoms.push((0.0, zeros as f64 / fk as f64));
    report.zero_count = zeros;
    report.measure = SpectralMeasure::new(atoms)?;
    Ok(report)
}

fn block_rank(sub: &SparseSignMatrix, opts: BettiOptions) -> Result<usize> {
    Ok(rank_checked(sub, opts.check, opts.seed)?.rank)
}

/// Stochastic Lanczos quadrature for the nonzero part of the spectrum of a
/// Gram matrix. Ritz values at or below `thr` are treated as kernel and
/// dropped; the remaining weights are normalized to 1.
fn lanczos_nonzero_measure(
    sub: &SparseSignMatrix,
    rows_side: bool,
    opts: &EsdOptions,
    thr: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Vec<(f64, f64)>> {
    let lap = UpLaplacian::from_coboundary(if rows_side { sub.transpose() } else { sub.clone() });
    let n = lap.dim();
    let steps = opts.lanczos_steps.min(n).max(1);
    let mut out: Vec<(f64, f64)> = Vec::new();
    for _ in 0..opts.probes.max(1) {
        let v0: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
        let (alpha, beta) = lanczos(&lap, v0, steps);
        let m = alpha.len();
        let mut t = Mat::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = t.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
        let s = eig.S().column_vector();
        let u = eig.U();
        for j in 0..m {
            let theta = s[j];
            if theta > thr {
                out.push((theta, u[(0, j)] * u[(0, j)]));
            }
        }
    }
    let total: f64 = out.iter().map(|a| a.1).sum();
    if !(total > 0.0) {
        return Err(Error::Numeric("Lanczos probes found no nonzero spectrum".into()));
    }
    for a in &mut out {
        a.1 /= total;
    }
    Ok(out)
}

/// Lanczos with full reorthogonalization; returns the tridiagonal
/// coefficients, stopping early on an invariant subspace.
fn lanczos(op: &UpLaplacian, mut v: Vec<f64>, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let n = v.len();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    for j in 0..steps {
        op.apply(&v, &mut w);
        let a: f64 = w.iter().zip(&v).map(|(x, y)| x * y).sum();
        alpha.push(a);
        basis.push(v);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &basis {
                let d: f64 = w.iter().zip(q).map(|(x, y)| x * y).sum();
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
            }
        }
        let b = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if j + 1 == steps || b <= 1e-10 * (1.0 + a.abs()) {
            break;
        }
        beta.push(b);
        v = w.iter().map(|x| x / b).collect();
    }
    (alpha, beta)
}

/// `Σ_i (e_τ, ψ_i)² δ_{λ_i}` over an orthonormal eigenbasis of `L_k^up`,
/// computed on the block containing `τ`.
pub fn rooted_spectral_measure(x: &SimplicialComplex, tau: &[u32], k: usize) -> Result<SpectralMeasure> {
    if tau.len() != k + 1 {
        return Err(Error::InvalidParameter(format!("root {tau:?} is not a {k}-simplex")));
    }
    let idx = x.index_of(tau).ok_or_else(|| Error::MissingSimplex(tau.to_vec()))?;
    let lap = up_laplacian(x, k)?;
    let thr = ZERO_TOL * lap.max_norm();
    let (blocks, _) = blocks(&lap.b);
    let Some(block) = blocks.iter().find(|bl| bl.cols.binary_search(&(idx as u32)).is_ok()) else {
        return Ok(SpectralMeasure::dirac(0.0));
    };
    if block.cols.len() > EIGEN_CAP {
        return Err(Error::CapExceeded { size: block.cols.len(), cap: EIGEN_CAP });
    }
    let mut col_map = vec![u32::MAX; lap.dim()];
    let sub = sub_block(&lap.b, block, &mut col_map);
    let local = block.cols.binary_search(&(idx as u32)).unwrap();
    let eig = gram(&sub, false)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut atoms = Vec::with_capacity(sub.ncols());
    let mut zero = 0.0;
    for j in 0..sub.ncols() {
        let mass = u[(local, j)] * u[(local, j)];
        if s[j].abs() <= thr {
            zero += mass;
        } else {
            atoms.push((s[j], mass));
        }
    }
    atoms.push((0.0, zero));
    // renormalize away rounding in the eigenvector norms
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    atoms.iter_mut().for_each(|a| a.1 /= total);
    SpectralMeasure::new(atoms)
}

/// Gauss quadrature for `μ_{(X,τ)}` from `steps` Lanczos steps started at
/// `e_τ`: matches the moments of order below `2 · steps`, and is exact once
/// the Krylov space is exhausted. Nodes at or below the zero threshold are
/// reported at 0.
pub fn rooted_spectral_quadrature(x: &SimplicialComplex, tau: &[u32], k: usize, steps: usize) -> Result<SpectralMeasure> {
    if tau.len() != k + 1 {
        return Err(Error::InvalidParameter(format!("root {tau:?} is not a {k}-simplex")));
    }
    let idx = x.index_of(tau).ok_or_else(|| Error::MissingSimplex(tau.to_vec()))?;
    let lap = up_laplacian(x, k)?;
    let thr = ZERO_TOL * lap.max_norm();
    let mut v = vec![0.0; lap.dim()];
    v[idx] = 1.0;
    let (alpha, beta) = lanczos(&lap, v, steps.max(1).min(lap.dim()));
    let m = alpha.len();
    let mut t = Mat::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = t.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
    let (s, u) = (eig.S().column_vector(), eig.U());
    let mut atoms: Vec<(f64, f64)> = (0..m).map(|j| (if s[j] <= thr { 0.0 } else { s[j] }, u[(0, j)] * u[(0, j)])).collect();
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    atoms.iter_mut().for_each(|a| a.1 /= total);
    SpectralMeasure::new(atoms)
}

/// `(L^m e_τ, e_τ)` by repeated sparse products.
pub fn walk_moment(x: &SimplicialComplex, tau: &[u32], k: usize, m: u32) -> Result<f64> {
    if tau.len() != k + 1 {
        return Err(Error::InvalidParameter(format!("root {tau:?} is not a {k}-simplex")));
    }
    let idx = x.index_of(tau).ok_or_else(|| Error::MissingSimplex(tau.to_vec()))?;
    let lap = up_laplacian(x, k)?;
    let mut v = vec![0.0; lap.dim()];
    v[idx] = 1.0;
    let mut w = vec![0.0; lap.dim()];
    for _ in 0..m {
        lap.apply(&v, &mut w);
        std::mem::swap(&mut v, &mut w);
    }
    Ok(v[idx])
}
