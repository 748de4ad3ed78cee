//! Limiting constants: the fixed point `t_{d,c}` of `t = exp(-c(1-t)^d)`,
//! its iterates, the thresholds `c_d`, the Betti constants `h_k`, `g_k`,
//! `h_k^{(l)}`, the Erdős–Rényi component series, and the multi-exponent
//! calculators `ψ_k`, `τ_k`.

use serde::Serialize;

use crate::combin::{binomial_f64, factorial_f64};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FixedPointResult {
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

#[inline]
fn step(d: u32, c: f64, t: f64) -> f64 {
    (-c * (1.0 - t).powi(d as i32)).exp()
}

/// `t^{(-1)}, t^{(0)}, .., t^{(l)}` (length `l + 2`).
pub fn t_iterates(d: u32, c: f64, l: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(l + 2);
    let mut t = 0.0;
    out.push(t);
    for _ in 0..=l {
        t = step(d, c, t);
        out.push(t);
    }
    out
}

/// The iterate `t^{(l)}` for `l >= -1`.
pub fn t_iterate(d: u32, c: f64, l: isize) -> f64 {
    let mut t = 0.0;
    for _ in -1..l {
        t = step(d, c, t);
    }
    t
}

/// Smallest root of `t = exp(-c(1-t)^d)` in `(0, 1]`.
///
/// Iterates upward from 0; every iterate is a lower bound for the smallest
/// root because the map is increasing. Once the iteration slows down, the
/// interval `[t, 1]` is scanned for the first sign change of
/// `exp(-c(1-t)^d) - t` and bisected. Without a sign change the root is
/// a touching one (or 1) and plain iteration continues within a budget.
pub fn t_fixed_point(d: u32, c: f64, tol: f64) -> Result<FixedPointResult> {
    if d == 0 || !(c >= 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("t_fixed_point needs d >= 1, c >= 0 (d={d}, c={c})")));
    }
    let resid = |t: f64| (t - step(d, c, t)).abs();
    if c == 0.0 {
        return Ok(FixedPointResult { value: 1.0, iterations: 0, residual: 0.0 });
    }
    let mut t = 0.0f64;
    let mut it = 0usize;
    while it < 500 {
        let next = step(d, c, t);
        it += 1;
        if next <= t {
            // floating-point fixed point
            return Ok(FixedPointResult { value: t, iterations: it, residual: resid(t) });
        }
        t = next;
        if resid(t) <= tol {
            return Ok(FixedPointResult { value: t, iterations: it, residual: resid(t) });
        }
    }
    const GRID: usize = 10_000;
    let f = |x: f64| step(d, c, x) - x;
    let (mut lo, width) = (t, (1.0 - t) / GRID as f64);
    for i in 1..=GRID {
        let x = if i == GRID { 1.0 } else { t + width * i as f64 };
        if f(x) < 0.0 {
            let mut hi = x;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) >= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let value = if resid(lo) <= resid(hi) { lo } else { hi };
            let residual = resid(value);
            if residual > tol {
                return Err(Error::Numeric(format!("bisection residual {residual:e} for d={d}, c={c}")));
            }
            return Ok(FixedPointResult { value, iterations: it, residual });
        }
        lo = x;
    }
    const BUDGET: usize = 200_000_000;
    while it < BUDGET {
        let next = step(d, c, t);
        it += 1;
        if next <= t || resid(next) <= tol {
            let value = next.max(t);
            return Ok(FixedPointResult { value, iterations: it, residual: resid(value) });
        }
        t = next;
    }
    Err(Error::Numeric(format!("t_fixed_point did not converge for d={d}, c={c}")))
}

/// `t_{d,c}` with the default tolerance.
pub fn t_dc(d: u32, c: f64) -> f64 {
    t_fixed_point(d, c, DEFAULT_TOL).expect("fixed point of a well-posed equation").value
}

/// `(d+1)(1-x) + (1+dx) log x`.
pub fn threshold_equation(d: u32, x: f64) -> f64 {
    let d = d as f64;
    (d + 1.0) * (1.0 - x) + (1.0 + d * x) * x.ln()
}

/// `x_d`: smallest root in `(0, 1)` of [`threshold_equation`]. Only
/// defined for `d >= 2`.
pub fn threshold_root(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("threshold root needs d >= 2, got {d}")));
    }
    const GRID: usize = 10_000;
    let (a, b) = (1e-9, 1.0 - 1e-9);
    let h = (b - a) / (GRID - 1) as f64;
    let f = |x| threshold_equation(d, x);
    let mut prev = a;
    let mut fprev = f(a);
    for i in 1..GRID {
        let x = a + h * i as f64;
        let fx = f(x);
        if fprev == 0.0 {
            return Ok(prev);
        }
        if fprev.signum() != fx.signum() {
            let (mut lo, mut hi, flo) = (prev, x, fprev);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid).signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
            if f(root).abs() > 1e-12 {
                return Err(Error::Numeric(format!("threshold residual {:e} for d={d}", f(root))));
            }
            return Ok(root);
        }
        prev = x;
        fprev = fx;
    }
    Err(Error::Numeric(format!("no bracket for the threshold root, d={d}")))
}

/// `c_d`: 1 for `d = 1`, else `-log x_d / (1 - x_d)^d`.
pub fn c_threshold(d: u32) -> Result<f64> {
    match d {
        0 => Err(Error::InvalidParameter("c_d needs d >= 1".into())),
        1 => Ok(1.0),
        _ => {
            let x = threshold_root(d)?;
            Ok(-x.ln() / (1.0 - x).powi(d as i32))
        }
    }
}

/// The two branches of `h_k(c)` (with `d = k + 1`): the linear one and the
/// fixed-point one.
pub fn h_branches(k: u32, c: f64) -> (f64, f64) {
    let d = k + 1;
    let df = d as f64;
    let linear = 1.0 - c / (df + 1.0);
    if c == 0.0 {
        return (linear, 1.0);
    }
    let t = t_dc(d, c);
    let u = 1.0 - t;
    let curved = t + c * t * u.powi(d as i32) - c / (df + 1.0) * (1.0 - u.powi(d as i32 + 1));
    (linear, curved)
}

/// `h_k(c)`, the limit of `β_k / f_k`.
pub fn h(k: u32, c: f64) -> f64 {
    let (a, b) = h_branches(k, c);
    a.max(b)
}

/// `g_k(c) = (k+1)/c · (h_{k-1}(c) - (1 - c/(k+1)))`, for `k >= 1`, `c > 0`.
pub fn g(k: u32, c: f64) -> f64 {
    assert!(k >= 1 && c > 0.0, "g_k(c) needs k >= 1 and c > 0");
    let kf = k as f64;
    ((kf + 1.0) / c * (h(k - 1, c) - (1.0 - c / (kf + 1.0)))).max(0.0)
}

/// The closed form `max{0, (1-t)^{k+1} - (k+1)(1-t)/c + (k+1) t (1-t)^k}`
/// with `t = t_{k,c}`.
pub fn g_closed(k: u32, c: f64) -> f64 {
    assert!(k >= 1 && c > 0.0, "g_k(c) needs k >= 1 and c > 0");
    let kf = k as f64;
    let t = t_dc(k, c);
    let u = 1.0 - t;
    (u.powi(k as i32 + 1) - (kf + 1.0) / c * u + (kf + 1.0) * t * u.powi(k as i32)).max(0.0)
}

/// `h_k^{(l)}(c)` for `l >= 1`.
pub fn h_finite(k: u32, c: f64, l: usize) -> f64 {
    assert!(l >= 1, "h_k^(l) needs l >= 1");
    let d = k + 1;
    let t = t_iterates(d, c, l);
    // t[j] = t^{(j-1)}
    let (t_lm2, t_lm1, t_l) = (t[l - 1], t[l], t[l + 1]);
    let kf = k as f64;
    let curved = t_lm1 + c * t_lm1 * (1.0 - t_lm2).powi(d as i32)
        - c / (kf + 2.0) * (1.0 - (1.0 - t_lm1).powi(d as i32) * (1.0 - t_l));
    (1.0 - c / (kf + 2.0)).max(curved)
}

/// `(1/c) Σ_{s≥1} s^{s-2}/s! (c e^{-c})^s`, the limit of components/n in
/// `G(n, c/n)`. Equals `h_0(c)`.
pub fn er_component_series(c: f64) -> f64 {
    if c == 0.0 {
        return 1.0;
    }
    let x = c * (-c).exp();
    let lx = x.ln();
    let mut sum = 0.0f64;
    let mut s = 1u64;
    loop {
        let sf = s as f64;
        // log of s^{s-2}/s! x^s
        let lt = (sf - 2.0) * sf.ln() - ln_factorial(s) + sf * lx;
        let term = lt.exp();
        sum += term;
        if term < 1e-16 * sum || s > 10_000_000 {
            break;
        }
        s += 1;
    }
    sum / c
}

fn ln_factorial(s: u64) -> f64 {
    if s < 30 {
        factorial_f64(s).ln()
    } else {
        // Stirling with three correction terms
        let x = s as f64;
        x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5))
    }
}

/// `ψ_k(α) = Σ_{i=0}^k C(k,i) α_i`. Missing entries of `α` count as 0.
pub fn psi(alpha: &[f64], k: usize) -> f64 {
    (0..=k).map(|i| binomial_f64(k as i64, i as i64) * alpha.get(i).copied().unwrap_or(0.0)).sum()
}

/// `τ_k(α) = k + 1 - Σ_{i=0}^k C(k+1,i+1) α_i`.
pub fn tau(alpha: &[f64], k: usize) -> f64 {
    (k + 1) as f64
        - (0..=k)
            .map(|i| binomial_f64(k as i64 + 1, i as i64 + 1) * alpha.get(i).copied().unwrap_or(0.0))
            .sum::<f64>()
}

/// The `k` with `ψ_k(α) < 1 < ψ_{k+1}(α)`, searched up to `max_k`.
pub fn critical_dim(alpha: &[f64], max_k: usize) -> Option<usize> {
    (0..max_k).find(|&k| psi(alpha, k) < 1.0 && 1.0 < psi(alpha, k + 1))
}

/// `e(α) = min{1 - ψ_k, ψ_{k+1} - 1}` at the critical dimension.
pub fn exponent_gap(alpha: &[f64], max_k: usize) -> Option<f64> {
    critical_dim(alpha, max_k).map(|k| (1.0 - psi(alpha, k)).min(psi(alpha, k + 1) - 1.0))
}

/// Curves for plotting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    /// `h_{d-1}(c)/d!`, the normalized Linial–Meshulam Betti limit.
    H { d: u32 },
    /// `g_k(c)/(k+1)!`.
    G { k: u32 },
    /// `c^{k/2} h_k(c)/(k+1)!`, the clique-complex limit of `β_k/n^{k/2+1}`.
    ScaledClique { k: u32 },
}

impl Curve {
    pub fn eval(&self, c: f64) -> f64 {
        match *self {
            Curve::H { d } => h(d - 1, c) / factorial_f64(d as u64),
            Curve::G { k } => {
                if c == 0.0 {
                    0.0
                } else {
                    g(k, c) / factorial_f64(k as u64 + 1)
                }
            }
            Curve::ScaledClique { k } => {
                c.powf(k as f64 / 2.0) * h(k, c) / factorial_f64(k as u64 + 1)
            }
        }
    }
}

/// Grid `a, a+step, .., <= b` (inclusive up to rounding).
pub fn grid(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!("bad range {a}:{b}:{step}")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + step * i as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn iterates() {
        let t = t_iterates(1, 2.0, 60);
        assert_eq!(t[0], 0.0);
        assert!(close(t[1], (-2.0f64).exp(), 1e-16));
        assert!(t.windows(2).all(|w| w[0] <= w[1]));
        assert!(close(*t.last().unwrap(), 0.20318786997997995, 1e-12));
        let z = t_iterates(2, 0.0, 5);
        assert!(z[1..].iter().all(|&x| x == 1.0));
        assert_eq!(t_iterate(1, 2.0, 0), t[1]);
        assert_eq!(t_iterate(1, 2.0, -1), 0.0);
    }

    #[test]
    fn fixed_points() {
        let r = t_fixed_point(1, 2.0, 1e-14).unwrap();
        assert!(r.residual <= 1e-14);
        assert!(close(r.value, 0.20318786997997995, 1e-13));
        assert_eq!(t_fixed_point(3, 0.0, 1e-14).unwrap().value, 1.0);
        for c in [0.3, 0.9, 1.0] {
            let r = t_fixed_point(1, c, 1e-14).unwrap();
            assert!(r.residual <= 1e-14, "c={c}");
            assert!(r.value > 0.999, "c={c}: {}", r.value);
        }
        for d in 1..5 {
            for c in [0.5, 2.0, 3.0, 4.0, 7.5] {
                assert!(t_fixed_point(d, c, 1e-14).unwrap().residual <= 1e-14);
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(c_threshold(1).unwrap(), 1.0);
        let x2 = threshold_root(2).unwrap();
        assert!(threshold_equation(2, x2).abs() <= 1e-12);
        assert!(close(x2, 0.11658603275812085, 1e-11));
        assert!(close(c_threshold(2).unwrap(), 2.7538058299742580, 1e-9));
        assert!(close(threshold_root(3).unwrap(), 0.027501575928863859, 1e-11));
        assert!(close(c_threshold(3).unwrap(), 3.9070806595121845, 1e-9));
    }

    #[test]
    fn h_values() {
        assert!(close(h(0, 0.5), 0.75, 1e-15));
        assert!(close(h(0, 2.0), 0.16190255947297871, 1e-12));
        assert!(close(h(0, 1.5), 0.28665376276372867, 1e-12));
        assert!(close(h(0, 3.0), 0.054206226321280799, 1e-12));
        assert!(close(h(1, 1.0), 2.0 / 3.0, 1e-15));
        assert!(close(h(1, 2.0), 1.0 / 3.0, 1e-15));
        assert!(close(h(1, 3.0), 0.060759114610925886, 1e-12));
        assert!(close(h(1, 4.0), 0.019890610093425913, 1e-12));
        assert!(close(h(1, 5.0), 0.0069811464683656136, 1e-12));
        assert_eq!(h(2, 0.0), 1.0);
    }

    #[test]
    fn branch_continuity_at_threshold() {
        for d in 1..=4u32 {
            let cd = c_threshold(d).unwrap();
            let (a, b) = h_branches(d - 1, cd);
            assert!((a - b).abs() <= 1e-9, "d={d}: {a} vs {b}");
        }
    }

    #[test]
    fn er_series_matches_h0() {
        for c in [0.5, 2.0, 1.5, 3.0] {
            assert!(close(er_component_series(c), h(0, c), 1e-8), "c={c}");
        }
    }

    #[test]
    fn g_two_ways() {
        for k in 1..4 {
            for c in [0.5, 1.0, 2.0, 2.7, 3.0, 4.5, 6.0] {
                assert!(close(g(k, c), g_closed(k, c), 1e-10), "k={k} c={c}");
            }
            let ck = c_threshold(k).unwrap();
            assert_eq!(g(k, 0.9 * ck), 0.0);
            assert!(g(k, ck * 1.01) > 0.0);
        }
    }

    #[test]
    fn h_finite_converges() {
        for k in 0..3 {
            for c in [0.5, 1.0, 2.0, 3.0, 4.0, 6.0] {
                let hf = h_finite(k, c, 60);
                assert!(hf >= 1.0 - c / (k as f64 + 2.0));
                assert!(close(hf, h(k, c), 1e-8), "k={k} c={c}: {hf} vs {}", h(k, c));
            }
            assert_eq!(h_finite(k, 0.0, 3), 1.0);
        }
    }

    #[test]
    fn exponents() {
        let zero = [0.0; 4];
        assert_eq!(psi(&zero, 3), 0.0);
        assert_eq!(critical_dim(&zero, 10), None);
        // Linial–Meshulam d = 2: α_2 = 1
        let lm = [0.0, 0.0, 1.0];
        assert_eq!(psi(&lm, 2), 1.0);
        assert_eq!(tau(&lm, 1), 2.0);
        // clique d = 1 with p = n^{-1/2}: ψ_k = k/2, critical between 1 and 3
        let clique = [0.0, 0.4];
        assert_eq!(critical_dim(&clique, 10), Some(2));
        assert!(close(exponent_gap(&clique, 10).unwrap(), 0.2, 1e-12));
    }

    #[test]
    fn curves() {
        assert_eq!(Curve::H { d: 2 }.eval(0.0), 0.5);
        let g = grid(0.0, 1.0, 0.25).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
