//! Seeded sampling of the multi-parameter model `X(n, p)` and its presets,
//! plus the exact law formulas and the derived parameters `q_k, r_k, s_k`.
//!
//! Level `i` candidates are the `i`-simplices whose whole boundary is
//! present; each is admitted independently with probability `p_i`. Candidates
//! are visited in lexicographic order and the admitted ones are found by
//! geometric skipping, so a level costs one draw per admitted simplex rather
//! than one per candidate. When level `i-1` is complete on the retained
//! vertices the candidates are all `(i+1)`-subsets and are never enumerated:
//! skips are applied to their lexicographic rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, binomial_f64, for_each_combination, SubsetRanker};
use crate::complex::{Level, SimplicialComplex};
use crate::error::{Error, Result};

/// Probability vector `p_0, .., p_D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiParameter {
    p: Vec<f64>,
}

impl MultiParameter {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        for (index, &value) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        if p.is_empty() {
            return Err(Error::InvalidParameter("empty probability vector".into()));
        }
        Ok(MultiParameter { p })
    }

    /// Linial–Meshulam: `p_i = 1` below `d`, `p_d = p`, nothing above.
    pub fn linial_meshulam(d: usize, p: f64) -> Result<Self> {
        let mut v = vec![1.0; d + 1];
        v[d] = p;
        Self::new(v)
    }

    /// Random `d`-clique complex up to dimension `cap`: `p_d = p`, every
    /// other level deterministic.
    pub fn clique(d: usize, p: f64, cap: usize) -> Result<Self> {
        if cap < d {
            return Err(Error::InsufficientCap { cap, needed: d });
        }
        let mut v = vec![1.0; cap + 1];
        v[d] = p;
        Self::new(v)
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// `p_i`, 0 beyond the stored range.
    pub fn get(&self, i: usize) -> f64 {
        self.p.get(i).copied().unwrap_or(0.0)
    }

    pub fn max_dim(&self) -> usize {
        self.p.len() - 1
    }
}

/// `q_{-1}..q_D`, `r_{-1}..r_{D-1}`, `s_0..s_{D-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
}

impl ModelParams {
    /// `q_k` for `k >= -1`.
    pub fn q(&self, k: isize) -> f64 {
        self.q.get((k + 1) as usize).copied().unwrap_or(0.0)
    }

    /// `r_k` for `k >= -1`.
    pub fn r(&self, k: isize) -> f64 {
        self.r.get((k + 1) as usize).copied().unwrap_or(0.0)
    }

    /// `s_k` for `k >= 0`.
    pub fn s(&self, k: usize) -> f64 {
        self.s.get(k).copied().unwrap_or(0.0)
    }
}

/// `Π_i p_i^{e_i}` with `0^0 = 1`; in log space once exponents get large.
fn product_of_powers(p: &[f64], exps: &[f64]) -> f64 {
    if exps.iter().any(|&e| e > 50.0) {
        let mut acc = 0.0;
        for (&pi, &e) in p.iter().zip(exps) {
            if e == 0.0 {
                continue;
            }
            if pi == 0.0 {
                return 0.0;
            }
            acc += e * pi.ln();
        }
        acc.exp()
    } else {
        p.iter()
            .zip(exps)
            .map(|(&pi, &e)| if e == 0.0 { 1.0 } else { pi.powf(e) })
            .product()
    }
}

pub fn derive_params(mp: &MultiParameter) -> ModelParams {
    let p = mp.p();
    let dmax = p.len() - 1;
    let q_of = |k: usize| {
        let exps: Vec<f64> = (0..=k).map(|i| binomial_f64(k as i64 + 1, i as i64 + 1)).collect();
        product_of_powers(&p[..=k], &exps)
    };
    let r_of = |k: isize| {
        if k == -1 {
            return p[0];
        }
        let k = k as usize;
        let top = (k + 1).min(dmax);
        let mut exps: Vec<f64> = (0..=top).map(|i| binomial_f64(k as i64 + 1, i as i64)).collect();
        let mut pv: Vec<f64> = p[..=top].to_vec();
        if k + 1 > dmax {
            // p_{k+1} = 0 beyond the stored range
            pv.push(0.0);
            exps.push(1.0);
        }
        product_of_powers(&pv, &exps)
    };
    let mut q = vec![1.0];
    q.extend((0..=dmax).map(q_of));
    let r: Vec<f64> = (-1..dmax as isize).map(r_of).collect();
    let s: Vec<f64> = (0..dmax)
        .map(|k| {
            let prev = r[k];
            if prev > 0.0 {
                r[k + 1] / prev
            } else {
                0.0
            }
        })
        .collect();
    ModelParams { q, r, s }
}

/// Stable mixing of a master seed and a stream index (splitmix64 finalizer).
pub fn stream_seed(master: u64, stream: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for stream `stream` of `master`.
pub fn stream_rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(master, stream))
}

/// Draws the gaps between successes of Bernoulli(`p`) trials.
#[derive(Clone, Copy, Debug)]
pub struct Skipper {
    p: f64,
    log_q: f64,
}

impl Skipper {
    pub fn new(p: f64) -> Self {
        Skipper { p, log_q: (-p).ln_1p() }
    }

    /// Number of failures before the next success; `u64::MAX` if `p = 0`.
    pub fn gap<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        if self.p >= 1.0 {
            return 0;
        }
        if self.p <= 0.0 {
            return u64::MAX;
        }
        // U in (0, 1]
        let u: f64 = 1.0 - rng.random::<f64>();
        let g = (u.ln() / self.log_q).floor();
        if g >= u64::MAX as f64 {
            u64::MAX
        } else {
            g as u64
        }
    }
}

/// Admits each index of `0..total` independently with probability `p`,
/// calling `f` on the admitted ones in increasing order.
pub fn bernoulli_indices<R: Rng + ?Sized>(rng: &mut R, total: u64, p: f64, mut f: impl FnMut(u64)) {
    if p >= 1.0 {
        (0..total).for_each(f);
        return;
    }
    let sk = Skipper::new(p);
    let mut pos = 0u64;
    loop {
        let g = sk.gap(rng);
        pos = match pos.checked_add(g) {
            Some(x) if x < total => x,
            _ => return,
        };
        f(pos);
        pos += 1;
    }
}

/// Samples `X(n, p)` up to dimension `dim_cap`.
pub fn mp_sample<R: Rng + ?Sized>(n: usize, mp: &MultiParameter, dim_cap: usize, rng: &mut R) -> Result<SimplicialComplex> {
    if dim_cap > mp.max_dim() {
        return Err(Error::InsufficientCap { cap: mp.max_dim(), needed: dim_cap });
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("n={n} too large")));
    }
    let mut levels: Vec<Level> = Vec::new();
    let mut verts = Vec::new();
    bernoulli_indices(rng, n as u64, mp.get(0), |v| verts.push(v as u32));
    let m = verts.len();
    levels.push(Level::from_sorted(1, verts.clone()));
    // level i-1 is the complete (i-1)-skeleton on the retained vertices
    let mut complete = true;
    for i in 1..=dim_cap {
        let p = mp.get(i);
        let prev = &levels[i - 1];
        if prev.is_empty() || p <= 0.0 {
            break;
        }
        let mut data = Vec::new();
        if complete {
            let ranker = SubsetRanker::new(m, i + 1);
            let total = ranker.total();
            if total == u64::MAX {
                return Err(Error::InvalidParameter(format!("C({m},{}) overflows", i + 1)));
            }
            if p >= 1.0 {
                for_each_combination(&verts, i + 1, |c| data.extend_from_slice(c));
            } else {
                let mut buf = Vec::with_capacity(i + 1);
                bernoulli_indices(rng, total, p, |r| {
                    ranker.unrank(r, &mut buf);
                    data.extend(buf.iter().map(|&j| verts[j as usize]));
                });
            }
            complete = p >= 1.0;
        } else {
            extend_level(prev, p, rng, &mut data);
        }
        let level = Level::from_sorted(i + 1, data);
        let stop = level.is_empty();
        levels.push(level);
        if stop {
            break;
        }
    }
    // levels above max_dim are empty by definition, so only a lower cap truncates
    let cap = if dim_cap < mp.max_dim() { Some(dim_cap) } else { None };
    Ok(SimplicialComplex::from_levels(n, cap, levels))
}

/// Candidates of the level above `prev`, visited in lexicographic order,
/// each admitted with probability `p`.
///
/// `prev` is sorted, so the `(i-1)`-simplices sharing the prefix
/// `s[..i-1]` form a contiguous block whose last vertices are exactly the
/// common upper neighbours of that prefix. A candidate `s ∪ {w}` needs `w`
/// later in the block of `s` and the remaining facets present.
fn extend_level<R: Rng + ?Sized>(prev: &Level, p: f64, rng: &mut R, out: &mut Vec<u32>) {
    let width = prev.width();
    let sk = Skipper::new(p);
    let mut remaining = sk.gap(rng);
    let mut face = Vec::with_capacity(width);
    let mut cand = Vec::with_capacity(width + 1);
    let count = prev.len();
    for a in 0..count {
        let s = prev.get(a);
        let prefix = &s[..width - 1];
        for b in a + 1..count {
            let t = prev.get(b);
            if t[..width - 1] != *prefix {
                break;
            }
            let w = t[width - 1];
            cand.clear();
            cand.extend_from_slice(s);
            cand.push(w);
            // facets dropping one of the prefix vertices
            let ok = (0..width - 1).all(|skip| {
                face.clear();
                face.extend(cand.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                prev.contains(&face)
            });
            if !ok {
                continue;
            }
            if remaining == 0 {
                out.extend_from_slice(&cand);
                remaining = sk.gap(rng);
            } else {
                remaining -= 1;
            }
        }
    }
}

/// `d`-Linial–Meshulam complex: full `(d-1)`-skeleton plus Bernoulli(`p`)
/// `d`-simplices.
pub fn lm_sample<R: Rng + ?Sized>(n: usize, d: usize, p: f64, rng: &mut R) -> Result<SimplicialComplex> {
    if d < 1 || d >= n {
        return Err(Error::InvalidParameter(format!("Linial–Meshulam needs 1 <= d < n (d={d}, n={n})")));
    }
    let mp = MultiParameter::linial_meshulam(d, p)?;
    mp_sample(n, &mp, d, rng)
}

/// Random `d`-clique complex truncated at dimension `dim_cap`.
pub fn clique_sample<R: Rng + ?Sized>(n: usize, d: usize, p: f64, dim_cap: usize, rng: &mut R) -> Result<SimplicialComplex> {
    if d < 1 || d >= n {
        return Err(Error::InvalidParameter(format!("clique model needs 1 <= d < n (d={d}, n={n})")));
    }
    let mp = MultiParameter::clique(d, p, dim_cap)?;
    let cap = if dim_cap + 1 < n { Some(dim_cap) } else { None };
    Ok(mp_sample(n, &mp, dim_cap, rng)?.with_cap(cap))
}

/// `P(Y ⊂ X) = Π p_i^{f_i(Y)}`.
pub fn subcomplex_prob(y: &SimplicialComplex, mp: &MultiParameter) -> f64 {
    let f = y.f_vector();
    let p: Vec<f64> = (0..f.len()).map(|i| mp.get(i)).collect();
    let e: Vec<f64> = f.iter().map(|&x| x as f64).collect();
    product_of_powers(&p, &e)
}

/// `P(X = Y) = Π_i p_i^{f_i(Y)} (1-p_i)^{e_i(Y)}` over `i = 0..=D`, with `X`
/// sampled up to the top dimension `D` of `p`.
pub fn realization_prob(y: &SimplicialComplex, mp: &MultiParameter, n: usize) -> Result<f64> {
    if y.n() != n {
        return Err(Error::InvalidParameter(format!("complex lives on [{}], not [{n}]", y.n())));
    }
    if y.dim() > mp.max_dim() as isize {
        return Ok(0.0);
    }
    let mut p = Vec::new();
    let mut e = Vec::new();
    for i in 0..=mp.max_dim().min(n.saturating_sub(1)) {
        let pi = mp.get(i);
        p.push(pi);
        e.push(y.f(i as isize) as f64);
        p.push(1.0 - pi);
        e.push(y.external_simplices(i).len() as f64);
    }
    Ok(product_of_powers(&p, &e))
}

/// Preset model families with a scaling rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    LinialMeshulam { d: usize },
    Clique { d: usize },
}

/// The `p` with `n · r_k(p) = c`.
pub fn scaling_for_c(model: Preset, k: usize, c: f64, n: usize) -> Result<f64> {
    if !(c >= 0.0) || n == 0 {
        return Err(Error::InfeasibleScaling(format!("c={c}, n={n}")));
    }
    let ratio = c / n as f64;
    if ratio > 1.0 {
        return Err(Error::InfeasibleScaling(format!("c={c} exceeds n={n}")));
    }
    match model {
        Preset::LinialMeshulam { d } => {
            if k + 1 != d {
                return Err(Error::InfeasibleScaling(format!(
                    "r_k is constant for Linial–Meshulam unless k = d-1 (k={k}, d={d})"
                )));
            }
            Ok(ratio)
        }
        Preset::Clique { d } => {
            let e = binomial(k as u64 + 1, d as u64);
            if e == 0 {
                return Err(Error::InfeasibleScaling(format!("r_k = 1 for k+1 < d (k={k}, d={d})")));
            }
            Ok(ratio.powf(1.0 / e as f64))
        }
    }
}

/// The probability vector of a preset at `p`, with dimension cap.
pub fn preset_params(model: Preset, p: f64, cap: usize) -> Result<MultiParameter> {
    match model {
        Preset::LinialMeshulam { d } => MultiParameter::linial_meshulam(d, p),
        Preset::Clique { d } => MultiParameter::clique(d, p, cap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_extremes() {
        let mut rng = stream_rng(1, 0);
        let x = mp_sample(5, &MultiParameter::new(vec![1.0, 1.0]).unwrap(), 1, &mut rng).unwrap();
        assert_eq!(x.f_vector(), vec![5, 10]);
        let x = mp_sample(5, &MultiParameter::new(vec![1.0, 0.0]).unwrap(), 1, &mut rng).unwrap();
        assert_eq!(x.f_vector(), vec![5]);
        let x = lm_sample(7, 2, 1.0, &mut rng).unwrap();
        assert_eq!(x.f_vector(), vec![7, 21, 35]);
        let x = lm_sample(7, 2, 0.0, &mut rng).unwrap();
        assert_eq!(x.f_vector(), vec![7, 21]);
        let x = clique_sample(6, 1, 1.0, 3, &mut rng).unwrap();
        assert_eq!(x, SimplicialComplex::full(6, 3));
        assert!(lm_sample(3, 3, 0.5, &mut rng).is_err());
    }

    #[test]
    fn reproducible_streams() {
        let mp = MultiParameter::new(vec![0.9, 0.5, 0.5]).unwrap();
        let a = mp_sample(12, &mp, 2, &mut stream_rng(42, 3)).unwrap();
        let b = mp_sample(12, &mp, 2, &mut stream_rng(42, 3)).unwrap();
        let c = mp_sample(12, &mp, 2, &mut stream_rng(42, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.is_closed());
    }

    #[test]
    fn general_levels_respect_boundaries() {
        let mp = MultiParameter::new(vec![0.8, 0.6, 0.7, 0.9]).unwrap();
        for t in 0..50 {
            let x = mp_sample(9, &mp, 3, &mut stream_rng(7, t)).unwrap();
            assert!(x.is_closed());
        }
    }

    #[test]
    fn derived_params() {
        let lm = derive_params(&MultiParameter::linial_meshulam(2, 0.3).unwrap());
        assert_eq!(lm.q(1), 1.0);
        assert!((lm.r(1) - 0.3).abs() < 1e-15);
        let p = 0.4;
        let cl = derive_params(&MultiParameter::clique(1, p, 4).unwrap());
        for k in 0..4isize {
            let q = p.powf(binomial_f64(k as i64 + 1, 2));
            let r = p.powf(binomial_f64(k as i64 + 1, 1));
            assert!((cl.q(k) - q).abs() < 1e-15);
            assert!((cl.r(k) - r).abs() < 1e-15);
        }
        assert!((cl.s(1) - p).abs() < 1e-15);
        assert_eq!(cl.r(-1), 1.0);
        for k in -1..4isize {
            assert!((cl.q(k + 1) - cl.q(k) * cl.r(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn law_formulas() {
        let p = 0.35;
        let edge = SimplicialComplex::from_simplices(2, [[0u32, 1]]).unwrap();
        let mp = MultiParameter::new(vec![1.0, p, 1.0]).unwrap();
        assert!((subcomplex_prob(&edge, &mp) - p).abs() < 1e-15);
        let tri = SimplicialComplex::from_simplices(3, [[0u32, 1, 2]]).unwrap();
        assert!((subcomplex_prob(&tri, &mp) - p.powi(3)).abs() < 1e-15);
        assert_eq!(subcomplex_prob(&SimplicialComplex::empty(3), &mp), 1.0);

        let q = 0.3;
        let mp = MultiParameter::new(vec![1.0, q]).unwrap();
        let two = SimplicialComplex::from_simplices(2, [[0u32], [1]]).unwrap();
        assert!((realization_prob(&two, &mp, 2).unwrap() - (1.0 - q)).abs() < 1e-15);
        assert!((realization_prob(&edge, &mp, 2).unwrap() - q).abs() < 1e-15);
        let r = 0.2;
        let mp = MultiParameter::new(vec![1.0, 1.0, r]).unwrap();
        let hollow = SimplicialComplex::from_simplices(3, [[0u32, 1], [0, 2], [1, 2]]).unwrap();
        assert!((realization_prob(&hollow, &mp, 3).unwrap() - (1.0 - r)).abs() < 1e-15);
    }

    #[test]
    fn scaling() {
        let n = 1000;
        let p = scaling_for_c(Preset::LinialMeshulam { d: 2 }, 1, 2.0, n).unwrap();
        assert_eq!(p, 2.0 / 1000.0);
        let p = scaling_for_c(Preset::Clique { d: 1 }, 1, 3.0, n).unwrap();
        assert!((p - (0.003f64).sqrt()).abs() < 1e-15);
        let p = scaling_for_c(Preset::Clique { d: 2 }, 3, 3.0, n).unwrap();
        assert!((p - 0.003f64.powf(1.0 / 6.0)).abs() < 1e-15);
        for (model, k) in [(Preset::LinialMeshulam { d: 2 }, 1), (Preset::Clique { d: 1 }, 2), (Preset::Clique { d: 2 }, 2)] {
            let p = scaling_for_c(model, k, 1.7, 500).unwrap();
            let r = derive_params(&preset_params(model, p, k + 1).unwrap()).r(k as isize);
            assert!((500.0 * r - 1.7).abs() < 1e-9);
        }
        assert!(scaling_for_c(Preset::LinialMeshulam { d: 2 }, 1, 20.0, 10).is_err());
        assert!(scaling_for_c(Preset::LinialMeshulam { d: 2 }, 0, 2.0, 10).is_err());
    }

    #[test]
    fn skipper_mean() {
        let mut rng = stream_rng(5, 0);
        let mut hits = 0u64;
        bernoulli_indices(&mut rng, 1_000_000, 0.01, |_| hits += 1);
        // Binomial(1e6, 0.01): sd ~ 99.5
        assert!((hits as f64 - 10_000.0).abs() < 5.0 * 99.5);
    }
}
