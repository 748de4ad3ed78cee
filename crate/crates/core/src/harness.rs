//! Seeded Monte Carlo experiments: configs, trial runners and JSON reports.
//!
//! Config files are flat `key = value` text; `#` starts a comment. Lists are
//! comma separated and `a:b:step` expands to an inclusive grid.
//!
//! | key            | value                                                         |
//! |----------------|---------------------------------------------------------------|
//! | `kind`         | `betti-lln`, `esd`, `local-weak`, `f-count`, `spatial-independence` |
//! | `model`        | `lm`, `clique`, `mp`                                          |
//! | `n`            | list of vertex counts                                         |
//! | `d`            | model dimension (`lm`, `clique`)                              |
//! | `k`            | degree studied, default `d - 1`                               |
//! | `c`            | grid of `n r_k` values (`lm`, `clique`)                       |
//! | `p`            | grid of `p` (`lm`, `clique`) or the vector `p_0..p_D` (`mp`)  |
//! | `dim_cap`      | stored dimension, default `k + 2`                             |
//! | `trials`       | trials per grid point, default 20                             |
//! | `seed`         | master seed, default 0                                        |
//! | `target`       | `h` (default) or `g`: scale `n r_{k-1} = c`, compare with `g_k` |
//! | `radius`       | `local-weak` radius, at most 2, default 1                     |
//! | `tree_samples` | Poisson trees per `local-weak` point, default 100000          |
//! | `output`       | report path (JSON)                                            |
//!
//! Betti numbers are reduced, so `β_0` is one less than the number of
//! components. Trials with `f_k = 0` are discarded and counted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{betti_number_with, cocycle_dim_with, BettiOptions};
use crate::combin::factorial_f64;
use crate::complex::SimplicialComplex;
use crate::constants::{g, grid, h, Curve};
use crate::error::{Error, Result};
use crate::poisson_tree::{poisson_histogram, pt_local_distribution};
use crate::sampler::{
    clique_sample, derive_params, lm_sample, mp_sample, scaling_for_c, stream_rng, stream_seed, subcomplex_prob,
    MultiParameter, Preset,
};
use crate::spectra::{esd_with, kolmogorov_distance_tol, EsdOptions, SpectralMeasure};
use crate::traversal::{empirical_local_distribution, root_degree_histogram, tv_distance};

/// Atoms closer than this are one atom when comparing mean ESDs.
pub const ESD_MERGE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    BettiLln,
    Esd,
    LocalWeak,
    FCount,
    SpatialIndependence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Lm,
    Clique,
    Mp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    H,
    G,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub model: Model,
    pub n: Vec<usize>,
    pub d: usize,
    pub k: usize,
    pub c: Vec<f64>,
    pub p: Vec<f64>,
    pub dim_cap: usize,
    pub trials: usize,
    pub seed: u64,
    pub target: Target,
    pub radius: usize,
    pub tree_samples: usize,
    pub output: Option<PathBuf>,
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Config(format!("{key}: cannot parse {s:?}"))))
        .collect()
}

fn float_list(key: &str, v: &str) -> Result<Vec<f64>> {
    if v.contains(':') {
        let parts: Vec<f64> = list(key, &v.replace(':', ","))?;
        if parts.len() != 3 {
            return Err(Error::Config(format!("{key}: expected a:b:step")));
        }
        return grid(parts[0], parts[1], parts[2]);
    }
    list(key, v)
}

fn scalar<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
}

impl ExperimentConfig {
    /// Parses and validates config text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let key = key.trim().to_string();
            if kv.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Config(format!("duplicate key {key}")));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let kind = match take("kind").as_deref() {
            Some("betti-lln") => Kind::BettiLln,
            Some("esd") => Kind::Esd,
            Some("local-weak") => Kind::LocalWeak,
            Some("f-count") => Kind::FCount,
            Some("spatial-independence") => Kind::SpatialIndependence,
            other => return Err(Error::Config(format!("kind: unknown {other:?}"))),
        };
        let model = match take("model").as_deref() {
            Some("lm") => Model::Lm,
            Some("clique") => Model::Clique,
            Some("mp") => Model::Mp,
            other => return Err(Error::Config(format!("model: unknown {other:?}"))),
        };
        let n = list("n", &take("n").ok_or_else(|| Error::Config("n is required".into()))?)?;
        let d = take("d").map(|v| scalar("d", &v)).transpose()?;
        let c = take("c").map(|v| float_list("c", &v)).transpose()?.unwrap_or_default();
        let p = take("p").map(|v| float_list("p", &v)).transpose()?.unwrap_or_default();
        let d: usize = match model {
            Model::Mp => d.unwrap_or(p.len().saturating_sub(1)),
            _ => d.ok_or_else(|| Error::Config("d is required".into()))?,
        };
        let k = match take("k") {
            Some(v) => scalar("k", &v)?,
            None => d.saturating_sub(1),
        };
        let dim_cap = match take("dim_cap") {
            Some(v) => scalar("dim_cap", &v)?,
            None => k + 2,
        };
        let trials = take("trials").map(|v| scalar("trials", &v)).transpose()?.unwrap_or(20);
        let seed = take("seed").map(|v| scalar("seed", &v)).transpose()?.unwrap_or(0);
        let target = match take("target").as_deref() {
            None | Some("h") => Target::H,
            Some("g") => Target::G,
            Some(other) => return Err(Error::Config(format!("target: unknown {other:?}"))),
        };
        let radius = take("radius").map(|v| scalar("radius", &v)).transpose()?.unwrap_or(1);
        let tree_samples = take("tree_samples").map(|v| scalar("tree_samples", &v)).transpose()?.unwrap_or(100_000);
        let output = take("output").map(PathBuf::from);
        if let Some(key) = kv.keys().next() {
            return Err(Error::Config(format!("unknown key {key}")));
        }
        let cfg = ExperimentConfig { kind, model, n, d, k, c, p, dim_cap, trials, seed, target, radius, tree_samples, output };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n.is_empty() {
            return bad("n list is empty".into());
        }
        match self.model {
            Model::Mp => {
                if !self.c.is_empty() {
                    return bad("mp takes an explicit p vector, not a c grid".into());
                }
                MultiParameter::new(self.p.clone())?;
            }
            _ => {
                if self.d == 0 {
                    return bad("d must be at least 1".into());
                }
                if self.c.is_empty() == self.p.is_empty() {
                    return bad("give exactly one of c and p".into());
                }
                if let Some(&q) = self.p.iter().find(|q| !(0.0..=1.0).contains(*q)) {
                    return bad(format!("p={q} is not a probability"));
                }
            }
        }
        if self.model == Model::Clique && self.dim_cap < self.d {
            return Err(Error::InsufficientCap { cap: self.dim_cap, needed: self.d });
        }
        if matches!(self.kind, Kind::BettiLln | Kind::Esd) && self.model != Model::Lm && self.dim_cap < self.k + 1 {
            return Err(Error::InsufficientCap { cap: self.dim_cap, needed: self.k + 1 });
        }
        if self.target == Target::G {
            if self.k == 0 {
                return bad("target g needs k >= 1".into());
            }
            if self.c.iter().any(|&c| c <= 0.0) {
                return bad("target g needs c > 0".into());
            }
        }
        if self.kind == Kind::LocalWeak && self.radius > 2 {
            return bad("local-weak radius must be at most 2".into());
        }
        if self.kind == Kind::SpatialIndependence && self.n.iter().any(|&n| n < self.k + 3) {
            return bad(format!("spatial-independence needs n >= k + 3 = {}", self.k + 3));
        }
        Ok(())
    }

    /// The degree whose `r` is scaled to `c / n`.
    fn scaled_degree(&self) -> usize {
        match self.target {
            Target::H => self.k,
            Target::G => self.k - 1,
        }
    }

    fn preset(&self) -> Option<Preset> {
        match self.model {
            Model::Lm => Some(Preset::LinialMeshulam { d: self.d }),
            Model::Clique => Some(Preset::Clique { d: self.d }),
            Model::Mp => None,
        }
    }

    /// Grid points at `n`, in config order.
    pub fn points(&self, n: usize) -> Result<Vec<GridPoint>> {
        let j = self.scaled_degree() as isize;
        let with_p = |p: f64| -> Result<MultiParameter> {
            match self.model {
                Model::Lm => MultiParameter::linial_meshulam(self.d, p),
                Model::Clique => MultiParameter::clique(self.d, p, self.dim_cap),
                Model::Mp => unreachable!(),
            }
        };
        let c_of = |mp: &MultiParameter| n as f64 * derive_params(mp).r(j);
        match self.preset() {
            None => {
                let mp = MultiParameter::new(self.p.clone())?;
                Ok(vec![GridPoint { c: c_of(&mp), p: f64::NAN, mp }])
            }
            Some(preset) if !self.c.is_empty() => self
                .c
                .iter()
                .map(|&c| {
                    let p = scaling_for_c(preset, j as usize, c, n)?;
                    Ok(GridPoint { c, p, mp: with_p(p)? })
                })
                .collect(),
            Some(_) => self
                .p
                .iter()
                .map(|&p| {
                    let mp = with_p(p)?;
                    Ok(GridPoint { c: c_of(&mp), p, mp })
                })
                .collect(),
        }
    }

    /// One sample at `n` and `point`.
    pub fn sample(&self, n: usize, point: &GridPoint, rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
        match self.model {
            Model::Lm => lm_sample(n, self.d, point.p, rng),
            Model::Clique => clique_sample(n, self.d, point.p, self.dim_cap, rng),
            Model::Mp => {
                let cap = self.dim_cap.min(point.mp.max_dim());
                let x = mp_sample(n, &point.mp, cap, rng)?;
                Ok(if cap < point.mp.max_dim() { x.with_cap(Some(cap)) } else { x })
            }
        }
    }

    /// Seed of the trial stream at `(n, point index)`.
    pub fn point_seed(&self, n: usize, point: usize) -> u64 {
        stream_seed(stream_seed(self.seed, n as u64), point as u64)
    }
}

/// A parameter setting at fixed `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    /// `n r_j` with `j` the scaled degree.
    pub c: f64,
    /// The scalar parameter of a preset; NaN for `mp`.
    pub p: f64,
    pub mp: MultiParameter,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub c: f64,
    pub p: Vec<f64>,
    pub trials: usize,
    pub discarded: usize,
    pub mean: f64,
    pub std: f64,
    pub target: f64,
    pub deviation: f64,
    pub wall_time_s: f64,
    /// Experiment-specific columns.
    pub extra: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    /// Rows with the wall-time column zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.rows.iter_mut().for_each(|row| row.wall_time_s = 0.0);
        r
    }
}

/// Worker count: `STOCHTOP_THREADS` if set, else rayon's default.
pub fn worker_count() -> usize {
    std::env::var("STOCHTOP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Runs `f(trial)` for every trial on the worker pool; results come back in
/// trial order.
pub fn run_trials<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..trials).into_par_iter().map(f).collect())
}

/// Sample mean and standard deviation (`n - 1` denominator).
pub fn mean_std(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let m = v.iter().sum::<f64>() / v.len() as f64;
    if v.len() < 2 {
        return (m, 0.0);
    }
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
    (m, var.sqrt())
}

fn row(n: usize, pt: &GridPoint, trials: usize, values: &[f64], target: f64, started: Instant) -> ReportRow {
    let (mean, std) = mean_std(values);
    ReportRow {
        n,
        c: pt.c,
        p: if pt.p.is_nan() { pt.mp.p().to_vec() } else { vec![pt.p] },
        trials,
        discarded: trials - values.len(),
        mean,
        std,
        target,
        deviation: (mean - target).abs(),
        wall_time_s: started.elapsed().as_secs_f64(),
        extra: BTreeMap::new(),
    }
}

fn each_point(
    cfg: &ExperimentConfig,
    mut f: impl FnMut(usize, usize, &GridPoint) -> Result<ReportRow>,
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for &n in &cfg.n {
        for (i, pt) in cfg.points(n)?.iter().enumerate() {
            rows.push(f(n, i, pt)?);
        }
    }
    Ok(rows)
}

/// `n^{k+1} q_k`.
fn face_scale(n: usize, k: usize, mp: &MultiParameter) -> f64 {
    (n as f64).powi(k as i32 + 1) * derive_params(mp).q(k as isize)
}

fn kind_check(cfg: &ExperimentConfig, kind: Kind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::Config(format!("config kind is {:?}, not {kind:?}", cfg.kind)));
    }
    Ok(())
}

/// Mean of `β_k / (n^{k+1} q_k)` against `h_k(c)/(k+1)!` (or `g_k(c)/(k+1)!`
/// for target `g`). The clique model with `d = 1` and target `h` reports
/// `β_k / n^{k/2+1}` against `c^{k/2} h_k(c)/(k+1)!` instead. The extra
/// column `f_ratio` is the mean of `f_k / (n^{k+1} q_k)` over kept trials.
pub fn run_betti_lln(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    kind_check(cfg, Kind::BettiLln)?;
    let k = cfg.k;
    let opts = BettiOptions::default();
    let rows = each_point(cfg, |n, i, pt| {
        let started = Instant::now();
        let seed = cfg.point_seed(n, i);
        let out = run_trials(cfg.trials, |t| {
            let x = cfg.sample(n, pt, &mut stream_rng(seed, t as u64))?;
            let f = x.f(k as isize);
            if f == 0 {
                return Ok(None);
            }
            Ok(Some((f, betti_number_with(&x, k, BettiOptions { seed: stream_seed(seed, t as u64), ..opts })?)))
        })?;
        let kept: Vec<(usize, usize)> = out.into_iter().flatten().collect();
        let scale = face_scale(n, k, &pt.mp);
        let fact = factorial_f64(k as u64 + 1);
        let scaled_clique = cfg.model == Model::Clique && cfg.d == 1 && cfg.target == Target::H;
        let (norm, target) = if scaled_clique {
            ((n as f64).powf(k as f64 / 2.0 + 1.0), Curve::ScaledClique { k: k as u32 }.eval(pt.c))
        } else {
            let t = match cfg.target {
                Target::H => h(k as u32, pt.c),
                Target::G => g(k as u32, pt.c),
            };
            (scale, t / fact)
        };
        let values: Vec<f64> = kept.iter().map(|&(_, b)| b as f64 / norm).collect();
        let mut r = row(n, pt, cfg.trials, &values, target, started);
        let f_ratio: Vec<f64> = kept.iter().map(|&(f, _)| f as f64 / scale).collect();
        r.extra.insert("f_ratio".into(), mean_std(&f_ratio).0);
        Ok(r)
    })?;
    Ok(ExperimentReport { config: cfg.clone(), rows })
}

/// Mean of `f_k / (n^{k+1} q_k)` against `1/(k+1)!`. No trial is discarded.
pub fn run_f_count(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    kind_check(cfg, Kind::FCount)?;
    let k = cfg.k;
    let rows = each_point(cfg, |n, i, pt| {
        let started = Instant::now();
        let seed = cfg.point_seed(n, i);
        let f = run_trials(cfg.trials, |t| Ok(cfg.sample(n, pt, &mut stream_rng(seed, t as u64))?.f(k as isize)))?;
        let scale = face_scale(n, k, &pt.mp);
        let values: Vec<f64> = f.iter().map(|&f| f as f64 / scale).collect();
        Ok(row(n, pt, cfg.trials, &values, 1.0 / factorial_f64(k as u64 + 1), started))
    })?;
    Ok(ExperimentReport { config: cfg.clone(), rows })
}

/// Total variation between the radius-`l` class law of a sample and that of
/// `PT_k(c)` (estimated from `tree_samples` trees); `mean` is this TV and the
/// target is 0. Extra columns: `degree_tv` against Poisson(`c`) and
/// `inexact_mass`, the mass of classes coded without exact labeling.
pub fn run_local_weak(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    kind_check(cfg, Kind::LocalWeak)?;
    let (k, l) = (cfg.k, cfg.radius);
    let rows = each_point(cfg, |n, i, pt| {
        let started = Instant::now();
        let seed = cfg.point_seed(n, i);
        let law = pt_local_distribution(k, pt.c, l, cfg.tree_samples, stream_seed(seed, u64::MAX))?;
        let po = poisson_histogram(pt.c);
        let out = run_trials(cfg.trials, |t| {
            let x = cfg.sample(n, pt, &mut stream_rng(seed, t as u64))?;
            if x.f(k as isize) == 0 {
                return Ok(None);
            }
            let emp = empirical_local_distribution(&x, k, l)?;
            let inexact = emp.iter().filter(|(c, _)| !c.exact).fold(0.0, |a, (_, m)| a + m);
            let deg = tv_distance(&root_degree_histogram(&x, k)?, &po);
            Ok(Some((tv_distance(&emp, &law), deg, inexact)))
        })?;
        let kept: Vec<(f64, f64, f64)> = out.into_iter().flatten().collect();
        let values: Vec<f64> = kept.iter().map(|v| v.0).collect();
        let mut r = row(n, pt, cfg.trials, &values, 0.0, started);
        r.extra.insert("degree_tv".into(), mean_std(&kept.iter().map(|v| v.1).collect::<Vec<_>>()).0);
        r.extra.insert("inexact_mass".into(), mean_std(&kept.iter().map(|v| v.2).collect::<Vec<_>>()).0);
        Ok(r)
    })?;
    Ok(ExperimentReport { config: cfg.clone(), rows })
}

/// Output of [`run_esd_detailed`]: the report plus the mean ESD per row.
#[derive(Clone, Debug)]
pub struct EsdRun {
    pub report: ExperimentReport,
    pub mean_esd: Vec<SpectralMeasure>,
}

/// Mean zero mass of the ESD of `L_k^up` against the upper estimate
/// `h_k(c)`. Extra columns:
/// - `ks_prev`: Kolmogorov distance to the mean ESD of the previous `n` at
///   the same grid index (absent on the first `n`);
/// - `zero_mismatches`: trials whose zero atom differs from `dim Z^k / f_k`
///   computed from a separate global rank;
/// - `trace_error`: largest `|mean(ESD) - (k+2) f_{k+1}/f_k|`;
/// - `lanczos_blocks`, `dense_blocks`: totals over trials.
pub fn run_esd(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    Ok(run_esd_detailed(cfg)?.report)
}

pub fn run_esd_detailed(cfg: &ExperimentConfig) -> Result<EsdRun> {
    kind_check(cfg, Kind::Esd)?;
    let k = cfg.k;
    let mut prev: BTreeMap<usize, SpectralMeasure> = BTreeMap::new();
    let mut means = Vec::new();
    let rows = each_point(cfg, |n, i, pt| {
        let started = Instant::now();
        let seed = cfg.point_seed(n, i);
        let out = run_trials(cfg.trials, |t| {
            let x = cfg.sample(n, pt, &mut stream_rng(seed, t as u64))?;
            let fk = x.f(k as isize);
            if fk == 0 {
                return Ok(None);
            }
            let opts = EsdOptions { seed: stream_seed(seed, t as u64), ..EsdOptions::default() };
            let rep = esd_with(&x, k, &opts)?;
            let z = cocycle_dim_with(&x, k, opts.rank)?;
            let atom0 = rep.measure.atoms().iter().filter(|a| a.0 == 0.0).map(|a| a.1).sum::<f64>();
            let exact = z == rep.zero_count && atom0 == z as f64 / fk as f64;
            let trace = (k + 2) as f64 * x.f(k as isize + 1) as f64 / fk as f64;
            Ok(Some((rep, z as f64 / fk as f64, exact, trace)))
        })?;
        let kept: Vec<_> = out.into_iter().flatten().collect();
        let values: Vec<f64> = kept.iter().map(|v| v.1).collect();
        let mut r = row(n, pt, cfg.trials, &values, h(k as u32, pt.c), started);
        let mismatches = kept.iter().filter(|v| !v.2).count();
        let trace_error = kept.iter().map(|v| (v.0.measure.mean() - v.3).abs()).fold(0.0, f64::max);
        r.extra.insert("zero_mismatches".into(), mismatches as f64);
        r.extra.insert("trace_error".into(), trace_error);
        r.extra.insert("lanczos_blocks".into(), kept.iter().map(|v| v.0.lanczos_blocks).sum::<usize>() as f64);
        r.extra.insert("dense_blocks".into(), kept.iter().map(|v| v.0.dense_blocks).sum::<usize>() as f64);
        let measures: Vec<SpectralMeasure> = kept.into_iter().map(|v| v.0.measure).collect();
        let mean = if measures.is_empty() { SpectralMeasure::dirac(0.0) } else { SpectralMeasure::average(&measures)? };
        if let Some(p) = prev.get(&i) {
            r.extra.insert("ks_prev".into(), kolmogorov_distance_tol(p, &mean, ESD_MERGE_TOL));
        }
        prev.insert(i, mean.clone());
        means.push(mean);
        Ok(r)
    })?;
    Ok(EsdRun { report: ExperimentReport { config: cfg.clone(), rows }, mean_esd: means })
}

/// Monte Carlo check of homogeneity and spatial independence on two
/// overlapping simplices `Y_1 = [0..=j]`, `Y_2 = [1..=j+1]` (closed, `j =
/// min(k+1, top dimension)`). `mean` is the largest `|z|` among the
/// containment frequencies of `Y_1`, `Y_2`, `Y_1 ∪ Y_2`, `Y_1 ∩ Y_2` against
/// their exact probabilities; target 0. Extra columns: `product_z`, the
/// z-score of `P̂(Y_1∪Y_2)P̂(Y_1∩Y_2) - P̂(Y_1)P̂(Y_2)` (delta method), and
/// `homogeneity_z`, the z-score of the difference in mean `k`-degree of
/// the first and last `k`-simplices on `[0..=k]` and `[n-k-1..n)`.
pub fn run_spatial_independence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    kind_check(cfg, Kind::SpatialIndependence)?;
    let k = cfg.k;
    let rows = each_point(cfg, |n, i, pt| {
        let started = Instant::now();
        let seed = cfg.point_seed(n, i);
        let top = match cfg.model {
            Model::Lm => cfg.d,
            _ => cfg.dim_cap.min(pt.mp.max_dim()),
        };
        let j = (k + 1).min(top) as u32;
        let closed = |s: Vec<u32>| SimplicialComplex::from_simplices(n, [s]).map(|y| y.skeleton(top));
        let y1 = closed((0..=j).collect())?;
        let y2 = closed((1..=j + 1).collect())?;
        let yu = SimplicialComplex::from_simplices(n, y1.simplices().chain(y2.simplices()))?;
        let yi = closed((1..=j).collect())?;
        let ys = [&y1, &y2, &yu, &yi];
        let first: Vec<u32> = (0..=k as u32).collect();
        let last: Vec<u32> = (n as u32 - k as u32 - 1..n as u32).collect();
        let out = run_trials(cfg.trials, |t| {
            let x = cfg.sample(n, pt, &mut stream_rng(seed, t as u64))?;
            let hit = ys.map(|y| y.simplices().all(|s| x.contains(s)));
            let deg = |s: &[u32]| if x.contains(s) { x.degree(s).unwrap_or(0) as f64 } else { 0.0 };
            Ok((hit, deg(&first), deg(&last)))
        })?;
        let tn = cfg.trials as f64;
        let freq: Vec<f64> = (0..4).map(|e| out.iter().filter(|o| o.0[e]).count() as f64 / tn).collect();
        let exact: Vec<f64> = ys.iter().map(|y| subcomplex_prob(y, &pt.mp)).collect();
        let z = |f: f64, p: f64| {
            let s = (p * (1.0 - p) / tn).sqrt();
            if s == 0.0 {
                if f == p { 0.0 } else { f64::INFINITY }
            } else {
                (f - p) / s
            }
        };
        let zs: Vec<f64> = freq.iter().zip(&exact).map(|(&f, &p)| z(f, p).abs()).collect();
        let worst = zs.iter().copied().fold(0.0, f64::max);
        let mut r = row(n, pt, cfg.trials, &[worst], 0.0, started);
        r.std = 0.0;
        // delta-method variance of the product identity at the exact probabilities
        let [p1, p2, pu, pi] = [exact[0], exact[1], exact[2], exact[3]];
        let gap = freq[2] * freq[3] - freq[0] * freq[1];
        let var = (pi * pi * pu * (1.0 - pu) + pu * pu * pi * (1.0 - pi) + p2 * p2 * p1 * (1.0 - p1)
            + p1 * p1 * p2 * (1.0 - p2))
            / tn;
        r.extra.insert("product_z".into(), if var > 0.0 { gap / var.sqrt() } else { 0.0 });
        let a: Vec<f64> = out.iter().map(|o| o.1).collect();
        let b: Vec<f64> = out.iter().map(|o| o.2).collect();
        let ((ma, sa), (mb, sb)) = (mean_std(&a), mean_std(&b));
        let se = ((sa * sa + sb * sb) / tn).sqrt();
        r.extra.insert("homogeneity_z".into(), if se > 0.0 { (ma - mb) / se } else { 0.0 });
        Ok(r)
    })?;
    Ok(ExperimentReport { config: cfg.clone(), rows })
}

/// Runs the experiment named by `cfg.kind` and writes the report to
/// `cfg.output` when set.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let report = match cfg.kind {
        Kind::BettiLln => run_betti_lln(cfg)?,
        Kind::FCount => run_f_count(cfg)?,
        Kind::LocalWeak => run_local_weak(cfg)?,
        Kind::Esd => run_esd(cfg)?,
        Kind::SpatialIndependence => run_spatial_independence(cfg)?,
    };
    if let Some(path) = &cfg.output {
        report.write(path)?;
    }
    Ok(report)
}

/// Parses `h`, `g`, `scaled-clique` with the degree argument: `d` for `h`,
/// `k` for the others.
pub fn curve_from_name(which: &str, d: Option<u32>, k: Option<u32>) -> Result<Curve> {
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Error::Config(format!("curve {which} needs --{name}")));
    match which {
        "h" => {
            let d = match (d, k) {
                (Some(d), _) => d,
                (None, Some(k)) => k + 1,
                _ => need(None, "d")?,
            };
            if d == 0 {
                return Err(Error::Config("h curve needs d >= 1".into()));
            }
            Ok(Curve::H { d })
        }
        "g" => {
            let k = need(k, "k")?;
            if k == 0 {
                return Err(Error::Config("g curve needs k >= 1".into()));
            }
            Ok(Curve::G { k })
        }
        "scaled-clique" => Ok(Curve::ScaledClique { k: need(k, "k")? }),
        other => Err(Error::Config(format!("unknown curve {other:?}"))),
    }
}

/// `c,value` CSV of `curve` on `cs`.
pub fn emit_curves(curve: Curve, cs: &[f64]) -> String {
    let mut s = String::from("c,value\n");
    for &c in cs {
        s.push_str(&format!("{c},{}\n", curve.eval(c)));
    }
    s
}
