//! Rank of sparse `±1` matrices over `GF(p)`.
//!
//! Singleton peeling comes first: a row or column with a single
//! nonzero is a pivot that creates no fill, so it is removed and counted.
//! On coboundary matrices this is exactly the elementary collapse and it
//! often eats the whole matrix. What remains is the core. Small cores go to
//! dense elimination, larger ones to sparse elimination with Markowitz-style
//! pivoting. If that fills in past a budget, Wiedemann's method runs on
//! `B = D1 Aᵀ D2 A D1` with random diagonal `D1, D2`: the linear generator
//! of `uᵀ B^i v`, found by Berlekamp–Massey, has `x`-free part of degree at
//! most `rank A`, with equality for all but a small fraction of the random
//! choices. Every estimate is therefore a lower bound, and two independent
//! runs that agree are accepted.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use crate::sampler::stream_rng;

/// Sparse matrix with entries in `{-1, +1}`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSignMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    neg: Vec<bool>,
}

impl SparseSignMatrix {
    /// Builds from per-row `(column, sign)` lists; `sign` is `+1` or `-1`.
    pub fn from_rows(ncols: usize, rows: &[Vec<(u32, i8)>]) -> Self {
        let mut b = Self::builder(ncols);
        for r in rows {
            b.push_row(r.iter().copied());
        }
        b
    }

    pub(crate) fn builder(ncols: usize) -> Self {
        SparseSignMatrix { nrows: 0, ncols, row_ptr: vec![0], cols: Vec::new(), neg: Vec::new() }
    }

    pub(crate) fn push_row(&mut self, entries: impl IntoIterator<Item = (u32, i8)>) {
        for (c, s) in entries {
            debug_assert!((c as usize) < self.ncols && (s == 1 || s == -1));
            self.cols.push(c);
            self.neg.push(s < 0);
        }
        self.row_ptr.push(self.cols.len());
        self.nrows += 1;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// `(column, sign)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, i8)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().zip(&self.neg[r]).map(|(&c, &n)| (c, if n { -1 } else { 1 }))
    }

    /// Column indices of row `i`.
    pub fn row_cols(&self, i: usize) -> &[u32] {
        &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    /// The submatrix on the given rows, with columns renumbered by
    /// `col_map` (entries outside the selection are dropped).
    pub fn select(&self, rows: &[u32], col_map: &[u32], ncols: usize) -> Self {
        let mut out = Self::builder(ncols);
        for &r in rows {
            out.push_row(self.row(r as usize).filter_map(|(c, s)| {
                let m = col_map[c as usize];
                (m != u32::MAX).then_some((m, s))
            }));
        }
        out
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.cols {
            counts[c as usize + 1] += 1;
        }
        for j in 0..self.ncols {
            counts[j + 1] += counts[j];
        }
        let mut fill = counts.clone();
        let mut cols = vec![0u32; self.cols.len()];
        let mut neg = vec![false; self.cols.len()];
        for i in 0..self.nrows {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let c = self.cols[k] as usize;
                cols[fill[c]] = i as u32;
                neg[fill[c]] = self.neg[k];
                fill[c] += 1;
            }
        }
        SparseSignMatrix { nrows: self.ncols, ncols: self.nrows, row_ptr: counts, cols, neg }
    }

    /// Dense integer matrix (tests and small diagnostics).
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.ncols]; self.nrows];
        for (i, row) in out.iter_mut().enumerate() {
            for (c, s) in self.row(i) {
                row[c as usize] += s as i64;
            }
        }
        out
    }

    /// Nonzero entries of `self · other` over the integers.
    pub fn product_nonzeros(&self, other: &SparseSignMatrix) -> Vec<(usize, usize, i64)> {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = Vec::new();
        let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
        for i in 0..self.nrows {
            acc.clear();
            for (j, s) in self.row(i) {
                for (l, t) in other.row(j as usize) {
                    *acc.entry(l as usize).or_default() += (s * t) as i64;
                }
            }
            out.extend(acc.iter().filter(|(_, &v)| v != 0).map(|(&l, &v)| (i, l, v)));
        }
        out
    }
}

/// Cores whose smaller side is at most this go to dense elimination.
pub const DENSE_CUTOFF: usize = 320;

/// Removes singleton rows and columns. Returns the number of pivots and
/// the remaining core.
pub fn peel(m: &SparseSignMatrix) -> (usize, SparseSignMatrix) {
    let t = m.transpose();
    let mut row_alive = vec![true; m.nrows];
    let mut col_alive = vec![true; m.ncols];
    let mut row_cnt: Vec<u32> = (0..m.nrows).map(|i| m.row_len(i) as u32).collect();
    let mut col_cnt: Vec<u32> = (0..m.ncols).map(|j| t.row_len(j) as u32).collect();
    // entries: (is_row, index)
    let mut stack: Vec<(bool, u32)> = Vec::new();
    for (i, &c) in row_cnt.iter().enumerate() {
        if c == 1 {
            stack.push((true, i as u32));
        }
    }
    for (j, &c) in col_cnt.iter().enumerate() {
        if c == 1 {
            stack.push((false, j as u32));
        }
    }
    let mut rank = 0usize;
    while let Some((is_row, idx)) = stack.pop() {
        let idx = idx as usize;
        let (pr, pc) = if is_row {
            if !row_alive[idx] || row_cnt[idx] != 1 {
                continue;
            }
            let c = m.row(idx).map(|(c, _)| c as usize).find(|&c| col_alive[c]).unwrap();
            (idx, c)
        } else {
            if !col_alive[idx] || col_cnt[idx] != 1 {
                continue;
            }
            let r = t.row(idx).map(|(r, _)| r as usize).find(|&r| row_alive[r]).unwrap();
            (r, idx)
        };
        rank += 1;
        row_alive[pr] = false;
        col_alive[pc] = false;
        for (c, _) in m.row(pr) {
            let c = c as usize;
            if col_alive[c] {
                col_cnt[c] -= 1;
                if col_cnt[c] == 1 {
                    stack.push((false, c as u32));
                }
            }
        }
        for (r, _) in t.row(pc) {
            let r = r as usize;
            if row_alive[r] {
                row_cnt[r] -= 1;
                if row_cnt[r] == 1 {
                    stack.push((true, r as u32));
                }
            }
        }
    }
    // compact the core
    let mut col_map = vec![u32::MAX; m.ncols];
    let mut next = 0u32;
    for j in 0..m.ncols {
        if col_alive[j] && col_cnt[j] > 0 {
            col_map[j] = next;
            next += 1;
        }
    }
    let mut core = SparseSignMatrix::builder(next as usize);
    for i in 0..m.nrows {
        if row_alive[i] && row_cnt[i] > 0 {
            core.push_row(m.row(i).filter(|&(c, _)| col_map[c as usize] != u32::MAX).map(|(c, s)| (col_map[c as usize], s)));
        }
    }
    (rank, core)
}

/// Exact rank by dense Gaussian elimination over `GF(p)`.
pub fn dense_rank(m: &SparseSignMatrix, f: Field) -> usize {
    let a = if m.nrows <= m.ncols { m.clone() } else { m.transpose() };
    let (nr, nc) = (a.nrows, a.ncols);
    let mut rows: Vec<Vec<u64>> = (0..nr)
        .map(|i| {
            let mut r = vec![0u64; nc];
            for (c, s) in a.row(i) {
                r[c as usize] = f.add(r[c as usize], if s > 0 { 1 } else { f.p() - 1 });
            }
            r
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(piv) = (rank..nr).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for r in rest.iter_mut() {
            let x = r[col];
            if x == 0 {
                continue;
            }
            let factor = f.mul(x, inv);
            for j in col..nc {
                if prow[j] != 0 {
                    r[j] = f.sub(r[j], f.mul(factor, prow[j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `v -> D Aᵀ D2 A v` with `D = D1²`, which is similar to
/// `D1 Aᵀ D2 A D1` and so has the same minimal polynomial. Vectors are
/// `u32` and each entry packs a column index with its sign in the top bit
/// to keep the working set in cache.
struct Operator {
    a: PackedRows,
    at: PackedRows,
    d: Vec<u32>,
    d2: Vec<u32>,
    f: Field,
    y: Vec<u32>,
}

struct PackedRows {
    ptr: Vec<u32>,
    ent: Vec<u32>,
    /// A multiple of `p` exceeding every possible negative row sum.
    bias: u64,
}

const SIGN: u32 = 1 << 31;

impl PackedRows {
    fn new(m: &SparseSignMatrix, p: u64) -> Self {
        let ptr = m.row_ptr.iter().map(|&x| x as u32).collect();
        let ent = m.cols.iter().zip(&m.neg).map(|(&c, &n)| if n { c | SIGN } else { c }).collect();
        let widest = (0..m.nrows).map(|i| m.row_len(i)).max().unwrap_or(0) as u64;
        PackedRows { ptr, ent, bias: p * (widest + 1) }
    }

    #[inline]
    fn apply(&self, x: &[u32], diag: &[u32], out: &mut [u32], f: Field) {
        assert!(out.len() + 1 == self.ptr.len() && diag.len() == out.len());
        assert!(self.ptr.last().is_none_or(|&e| e as usize <= self.ent.len()));
        debug_assert!(self.ent.iter().all(|&e| ((e & !SIGN) as usize) < x.len()));
        let bias = self.bias as i64;
        for i in 0..out.len() {
            // SAFETY: ptr is nondecreasing and bounded by ent.len() (checked
            // above), and every packed column index is below x.len() by
            // construction of the operator.
            unsafe {
                let lo = *self.ptr.get_unchecked(i) as usize;
                let hi = *self.ptr.get_unchecked(i + 1) as usize;
                let mut acc = bias;
                for &e in self.ent.get_unchecked(lo..hi) {
                    let v = *x.get_unchecked((e & !SIGN) as usize) as i64;
                    let mask = -((e >> 31) as i64);
                    acc += (v ^ mask) - mask;
                }
                let r = f.reduce(acc as u64);
                *out.get_unchecked_mut(i) = f.mul(r, *diag.get_unchecked(i) as u64) as u32;
            }
        }
    }
}

impl Operator {
    fn new(a: &SparseSignMatrix, f: Field, rng: &mut ChaCha8Rng) -> Self {
        let nz = |rng: &mut ChaCha8Rng| rng.random_range(1..f.p());
        let d = (0..a.ncols)
            .map(|_| {
                let x = nz(rng);
                f.mul(x, x) as u32
            })
            .collect();
        let d2 = (0..a.nrows).map(|_| nz(rng) as u32).collect();
        Operator {
            a: PackedRows::new(a, f.p()),
            at: PackedRows::new(&a.transpose(), f.p()),
            d,
            d2,
            f,
            y: vec![0; a.nrows],
        }
    }

    fn apply(&mut self, w: &[u32], out: &mut [u32]) {
        self.a.apply(w, &self.d2, &mut self.y, self.f);
        self.at.apply(&self.y, &self.d, out, self.f);
    }
}

#[inline]
fn reduce_u128(f: Field, x: u128) -> u64 {
    let hi = f.reduce((x >> 64) as u64);
    // 2^64 mod p
    let r64 = f.reduce(f.reduce(1 << 32) * f.reduce(1 << 32));
    f.add(f.mul(hi, r64), f.reduce(x as u64))
}

/// Online Berlekamp–Massey over `GF(p)`.
struct BerlekampMassey {
    f: Field,
    seq: Vec<u64>,
    c: Vec<u64>,
    b: Vec<u64>,
    l: usize,
    m: usize,
    bd: u64,
    zero_streak: usize,
}

impl BerlekampMassey {
    fn new(f: Field, cap: usize) -> Self {
        let mut c = Vec::with_capacity(cap + 2);
        c.push(1);
        let mut b = Vec::with_capacity(cap + 2);
        b.push(1);
        BerlekampMassey { f, seq: Vec::with_capacity(2 * cap + 8), c, b, l: 0, m: 1, bd: 1, zero_streak: 0 }
    }

    fn push(&mut self, s: u64) {
        let f = self.f;
        self.seq.push(s);
        let n = self.seq.len() - 1;
        // products are below 2^62, so thousands of them fit in a u128
        let mut acc = s as u128;
        for i in 1..=self.l.min(self.c.len() - 1) {
            acc += (self.c[i] * self.seq[n - i]) as u128;
        }
        let d = reduce_u128(f, acc);
        if d == 0 {
            self.m += 1;
            self.zero_streak += 1;
            return;
        }
        self.zero_streak = 0;
        let coef = f.mul(d, f.inv(self.bd));
        let need = self.b.len() + self.m;
        let lengthen = 2 * self.l <= n;
        let saved = if lengthen { Some(self.c.clone()) } else { None };
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        // c[i + m] -= coef * b[i], with Shoup's precomputed quotient
        let p = f.p();
        let neg = p - coef;
        let shoup = (((neg as u128) << 64) / p as u128) as u64;
        for (c, &bi) in self.c[self.m..].iter_mut().zip(&self.b) {
            let q = ((bi as u128 * shoup as u128) >> 64) as u64;
            let mut r = bi.wrapping_mul(neg).wrapping_sub(q.wrapping_mul(p));
            if r >= p {
                r -= p;
            }
            *c = f.add(*c, r);
        }
        if let Some(t) = saved {
            self.l = n + 1 - self.l;
            self.b = t;
            self.bd = d;
            self.m = 1;
        } else {
            self.m += 1;
        }
    }

    /// Degree of the connection polynomial.
    fn degree(&self) -> usize {
        self.c.iter().rposition(|&x| x != 0).unwrap_or(0)
    }
}

/// Rows and columns permuted into order of increasing weight, so the inner
/// loops of the operator see runs of equal length.
fn by_weight(m: &SparseSignMatrix) -> SparseSignMatrix {
    let mut deg = vec![0u32; m.ncols];
    for &c in &m.cols {
        deg[c as usize] += 1;
    }
    let mut order: Vec<u32> = (0..m.ncols as u32).collect();
    order.sort_by_key(|&j| deg[j as usize]);
    let mut relabel = vec![0u32; m.ncols];
    for (new, &old) in order.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    let mut rows: Vec<usize> = (0..m.nrows).collect();
    rows.sort_by_key(|&i| m.row_len(i));
    let mut out = SparseSignMatrix::builder(m.ncols);
    for i in rows {
        out.push_row(m.row(i).map(|(c, s)| (relabel[c as usize], s)));
    }
    out
}

/// Consecutive zero discrepancies after which the generator is accepted.
const EARLY_STOP: usize = 24;

/// One Wiedemann run; returns a lower bound on the rank that is exact with
/// high probability.
pub fn wiedemann_rank(m: &SparseSignMatrix, f: Field, rng: &mut ChaCha8Rng) -> usize {
    let owned;
    let a = if m.ncols <= m.nrows {
        m
    } else {
        owned = m.transpose();
        &owned
    };
    let n = a.ncols;
    if n == 0 || a.nrows == 0 {
        return 0;
    }
    let a = &by_weight(a);
    let mut op = Operator::new(a, f, rng);
    let u: Vec<u32> = (0..n).map(|_| rng.random_range(0..f.p()) as u32).collect();
    let mut w: Vec<u32> = (0..n).map(|_| rng.random_range(0..f.p()) as u32).collect();
    let mut next = vec![0u32; n];
    let mut bm = BerlekampMassey::new(f, n + 1);
    let max_terms = 2 * n + 8;
    for i in 0..max_terms {
        let mut acc = 0u128;
        for (&ui, &wi) in u.iter().zip(&w) {
            acc += (ui as u64 * wi as u64) as u128;
        }
        bm.push(reduce_u128(f, acc));
        if i + 1 >= 2 * bm.l && bm.zero_streak >= EARLY_STOP {
            break;
        }
        op.apply(&w, &mut next);
        std::mem::swap(&mut w, &mut next);
    }
    bm.degree()
}

/// Which checks a rank computation performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCheck {
    /// One run modulo the first prime.
    Single,
    /// Independent runs modulo both primes must agree.
    TwoPrime,
}

/// Outcome of a checked rank computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub peeled: usize,
    pub core_rows: usize,
    pub core_cols: usize,
    /// Rank modulo the verifier prime, when computed.
    pub verifier: Option<usize>,
}

/// Entry budget for sparse elimination before falling back to Wiedemann.
pub const FILL_BUDGET: usize = 24_000_000;

/// Exact rank of the core when dense or sparse elimination applies.
fn exact_core_rank(core: &SparseSignMatrix, f: Field) -> Option<usize> {
    if core.nrows.min(core.ncols) == 0 {
        Some(0)
    } else if core.nrows.min(core.ncols) <= DENSE_CUTOFF {
        Some(dense_rank(core, f))
    } else {
        markowitz_rank(core, f, FILL_BUDGET.max(4 * core.nnz()))
    }
}

fn core_rank(core: &SparseSignMatrix, f: Field, rng: &mut ChaCha8Rng) -> usize {
    exact_core_rank(core, f).unwrap_or_else(|| wiedemann_rank(core, f, rng))
}

/// Rank over `GF(prime)`. Cores that overflow the fill budget are resolved
/// by repeated Wiedemann runs until two agree (the maximum is returned).
pub fn rank_mod_p(m: &SparseSignMatrix, prime: u32) -> usize {
    let f = Field::new(prime);
    let (peeled, core) = peel(m);
    if let Some(r) = exact_core_rank(&core, f) {
        return peeled + r;
    }
    let mut rng = stream_rng(prime as u64, core.nnz() as u64);
    let mut best = wiedemann_rank(&core, f, &mut rng);
    for _ in 0..6 {
        let r = wiedemann_rank(&core, f, &mut rng);
        if r == best {
            break;
        }
        best = best.max(r);
    }
    peeled + best
}

/// Rank modulo the first prime, optionally cross-checked modulo the second.
/// Disagreement is retried once before being reported as an error.
pub fn rank_checked(m: &SparseSignMatrix, check: RankCheck, seed: u64) -> crate::Result<RankReport> {
    use super::field::{P1, P2};
    let (peeled, core) = peel(m);
    let mut rng = stream_rng(seed, core.nnz() as u64);
    let f1 = Field::new(P1);
    let mut r1 = core_rank(&core, f1, &mut rng);
    let mut report = RankReport { rank: peeled + r1, peeled, core_rows: core.nrows, core_cols: core.ncols, verifier: None };
    if check == RankCheck::Single {
        return Ok(report);
    }
    let f2 = Field::new(P2);
    let mut r2 = core_rank(&core, f2, &mut rng);
    if r1 != r2 {
        r1 = r1.max(core_rank(&core, f1, &mut rng));
        r2 = r2.max(core_rank(&core, f2, &mut rng));
    }
    if r1 != r2 {
        return Err(crate::Error::RankMismatch { first: peeled + r1, second: peeled + r2 });
    }
    report.rank = peeled + r1;
    report.verifier = Some(peeled + r2);
    Ok(report)
}

/// Exact rank by sparse elimination: pivot on a column of least count,
/// in its shortest row. Gives up with `None` once the stored entries
/// exceed `max_entries`.
pub fn markowitz_rank(m: &SparseSignMatrix, f: Field, max_entries: usize) -> Option<usize> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let p = f.p();
    let mut rows: Vec<Vec<(u32, u32)>> = (0..m.nrows)
        .map(|i| {
            let mut r: Vec<(u32, u32)> = m.row(i).map(|(c, s)| (c, if s > 0 { 1 } else { (p - 1) as u32 })).collect();
            r.sort_unstable_by_key(|e| e.0);
            r
        })
        .collect();
    let mut row_alive = vec![true; m.nrows];
    let mut col_alive = vec![true; m.ncols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.ncols];
    let mut col_cnt = vec![0u32; m.ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
            col_cnt[c as usize] += 1;
        }
    }
    let mut total: usize = rows.iter().map(Vec::len).sum();
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
        (0..m.ncols).filter(|&j| col_cnt[j] > 0).map(|j| Reverse((col_cnt[j], j as u32))).collect();
    let mut rank = 0usize;
    let mut scratch: Vec<(u32, u32)> = Vec::new();
    let mut live: Vec<u32> = Vec::new();
    let mut stamp = vec![u32::MAX; m.nrows];
    while let Some(Reverse((cnt, j))) = heap.pop() {
        let j = j as usize;
        if !col_alive[j] || cnt != col_cnt[j] {
            continue;
        }
        if cnt == 0 {
            col_alive[j] = false;
            continue;
        }
        live.clear();
        for &i in &col_rows[j] {
            let iu = i as usize;
            if row_alive[iu] && stamp[iu] != j as u32 && rows[iu].binary_search_by_key(&(j as u32), |e| e.0).is_ok() {
                stamp[iu] = j as u32;
                live.push(i);
            }
        }
        debug_assert_eq!(live.len() as u32, col_cnt[j]);
        let &piv = live.iter().min_by_key(|&&i| rows[i as usize].len()).unwrap();
        let prow = std::mem::take(&mut rows[piv as usize]);
        let pj = prow[prow.binary_search_by_key(&(j as u32), |e| e.0).unwrap()].1 as u64;
        let pinv = f.inv(pj);
        for &i in &live {
            if i == piv {
                continue;
            }
            let row = &rows[i as usize];
            let aij = row[row.binary_search_by_key(&(j as u32), |e| e.0).unwrap()].1 as u64;
            let factor = f.mul(aij, pinv);
            scratch.clear();
            let (mut a, mut b) = (0usize, 0usize);
            while a < row.len() || b < prow.len() {
                let ca = row.get(a).map_or(u32::MAX, |e| e.0);
                let cb = prow.get(b).map_or(u32::MAX, |e| e.0);
                if ca < cb {
                    scratch.push(row[a]);
                    a += 1;
                } else if cb < ca {
                    let v = f.neg(f.mul(factor, prow[b].1 as u64));
                    scratch.push((cb, v as u32));
                    col_cnt[cb as usize] += 1;
                    col_rows[cb as usize].push(i);
                    b += 1;
                } else {
                    let v = f.sub(row[a].1 as u64, f.mul(factor, prow[b].1 as u64));
                    if v != 0 {
                        scratch.push((ca, v as u32));
                    } else {
                        col_cnt[ca as usize] -= 1;
                    }
                    a += 1;
                    b += 1;
                }
            }
            total = total + scratch.len() - rows[i as usize].len();
            std::mem::swap(&mut rows[i as usize], &mut scratch);
        }
        col_rows[j] = Vec::new();
        row_alive[piv as usize] = false;
        total -= prow.len();
        for &(c, _) in &prow {
            col_cnt[c as usize] -= 1;
        }
        col_alive[j] = false;
        rank += 1;
        for &(c, _) in &prow {
            if col_alive[c as usize] {
                heap.push(Reverse((col_cnt[c as usize], c)));
            }
        }
        if total > max_entries {
            return None;
        }
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::super::field::{P1, P2};
    use super::*;
    use rand::Rng;

    fn random_sign_matrix(rng: &mut ChaCha8Rng, nr: usize, nc: usize, per_row: usize) -> SparseSignMatrix {
        let rows: Vec<Vec<(u32, i8)>> = (0..nr)
            .map(|_| {
                let mut cols: Vec<u32> = (0..per_row).map(|_| rng.random_range(0..nc as u32)).collect();
                cols.sort_unstable();
                cols.dedup();
                cols.into_iter().map(|c| (c, if rng.random::<bool>() { 1 } else { -1 })).collect()
            })
            .collect();
        SparseSignMatrix::from_rows(nc, &rows)
    }

    #[test]
    fn small_cases() {
        let id = SparseSignMatrix::from_rows(3, &[vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]]);
        assert_eq!(rank_mod_p(&id, P1), 3);
        let zero = SparseSignMatrix::from_rows(3, &[vec![], vec![]]);
        assert_eq!(rank_mod_p(&zero, P1), 0);
        // hollow triangle d_0: rows are edges 01, 02, 12
        let d0 = SparseSignMatrix::from_rows(3, &[vec![(1, 1), (0, -1)], vec![(2, 1), (0, -1)], vec![(2, 1), (1, -1)]]);
        assert_eq!(rank_mod_p(&d0, P1), 2);
        assert_eq!(dense_rank(&d0, Field::new(P1)), 2);
    }

    #[test]
    fn peeling_preserves_rank() {
        let mut rng = stream_rng(11, 0);
        for t in 0..40 {
            let m = random_sign_matrix(&mut rng, 30 + t, 25, 3);
            let full = dense_rank(&m, Field::new(P1));
            let (r, core) = peel(&m);
            assert_eq!(r + dense_rank(&core, Field::new(P1)), full);
        }
    }

    #[test]
    fn wiedemann_agrees_with_dense() {
        let mut rng = stream_rng(12, 0);
        for (nr, nc, k) in [(400, 300, 3), (300, 420, 3), (500, 500, 2), (350, 350, 4), (600, 200, 2)] {
            let m = random_sign_matrix(&mut rng, nr, nc, k);
            let exact = dense_rank(&m, Field::new(P1));
            let w = wiedemann_rank(&m, Field::new(P1), &mut rng);
            assert!(w <= exact);
            assert_eq!(rank_mod_p(&m, P1), exact, "{nr}x{nc}");
            assert_eq!(rank_mod_p(&m, P2), dense_rank(&m, Field::new(P2)));
        }
    }

    #[test]
    fn markowitz_agrees_with_dense() {
        let mut rng = stream_rng(14, 0);
        for (nr, nc, k) in [(400, 300, 3), (300, 420, 3), (500, 500, 2), (200, 60, 5)] {
            let m = random_sign_matrix(&mut rng, nr, nc, k);
            for p in [P1, P2] {
                assert_eq!(markowitz_rank(&m, Field::new(p), usize::MAX), Some(dense_rank(&m, Field::new(p))));
            }
        }
        let m = random_sign_matrix(&mut rng, 400, 400, 4);
        assert_eq!(markowitz_rank(&m, Field::new(P1), 2000), None);
    }

    #[test]
    fn checked_rank() {
        let mut rng = stream_rng(13, 0);
        let m = random_sign_matrix(&mut rng, 700, 500, 3);
        let r = rank_checked(&m, RankCheck::TwoPrime, 1).unwrap();
        assert_eq!(r.rank, dense_rank(&m, Field::new(P1)));
        assert_eq!(r.verifier, Some(r.rank));
    }
}

