//! `k`-rooted Poisson trees, their pruning, and binomial/Poisson distances.
//!
//! A node is a `k`-simplex. Each attachment on a node is a `(k+1)`-simplex
//! made of the node and one fresh vertex; it carries `k + 1` new `k`-faces,
//! listed by the position in the node's vertex tuple that the fresh vertex
//! replaces.

use std::collections::BTreeMap;

use rand::Rng;

use crate::complex::{RootedComplex, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::sampler::stream_rng;
use crate::spectra::SpectralMeasure;
use crate::traversal::Histogram;

/// Extra generations sampled beyond what `l` prunings read.
pub const DEPTH_MARGIN: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRootedTree {
    k: usize,
    /// `nodes[0]` is the root; each entry lists its attachments, an
    /// attachment being the `k + 1` child node ids by replaced position.
    nodes: Vec<Vec<Vec<usize>>>,
    /// Generation of each node.
    depth: Vec<usize>,
}

impl KRootedTree {
    pub fn bare(k: usize) -> Self {
        KRootedTree { k, nodes: vec![Vec::new()], depth: vec![0] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of `k`-simplices.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of `(k+1)`-simplices.
    pub fn attachment_count(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum()
    }

    pub fn root_degree(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    fn add_attachment(&mut self, parent: usize) {
        let base = self.nodes.len();
        let d = self.depth[parent] + 1;
        for _ in 0..=self.k {
            self.nodes.push(Vec::new());
            self.depth.push(d);
        }
        self.nodes[parent].push((base..base + self.k + 1).collect());
    }

    /// Builds a tree from nested child counts: `shape[i]` attachments at the
    /// `i`-th node in creation order (test fixtures).
    pub fn from_counts(k: usize, shape: &[usize]) -> Self {
        let mut t = Self::bare(k);
        let mut i = 0;
        while i < t.nodes.len() && i < shape.len() {
            for _ in 0..shape[i] {
                t.add_attachment(i);
            }
            i += 1;
        }
        t
    }
}

/// Poisson draw by inversion; large means are split into sums.
pub fn poisson<R: Rng + ?Sized>(c: f64, rng: &mut R) -> usize {
    if c <= 0.0 {
        return 0;
    }
    if c > 30.0 {
        let parts = (c / 30.0).ceil() as usize;
        return (0..parts).map(|_| poisson(c / parts as f64, rng)).sum();
    }
    let u: f64 = rng.random();
    let mut p = (-c).exp();
    let mut f = p;
    let mut x = 0usize;
    while u > f && p > 0.0 {
        x += 1;
        p *= c / x as f64;
        f += p;
    }
    x
}

/// `PT_k(c)` truncated at generation `depth`.
pub fn sample_pt<R: Rng + ?Sized>(k: usize, c: f64, depth: usize, rng: &mut R) -> Result<KRootedTree> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("Poisson mean {c}")));
    }
    let mut t = KRootedTree::bare(k);
    let mut i = 0;
    while i < t.nodes.len() {
        if t.depth[i] < depth {
            for _ in 0..poisson(c, rng) {
                t.add_attachment(i);
            }
        }
        i += 1;
    }
    Ok(t)
}

/// Seeded variant of [`sample_pt`].
pub fn sample_pt_seeded(k: usize, c: f64, depth: usize, seed: u64) -> Result<KRootedTree> {
    sample_pt(k, c, depth, &mut stream_rng(seed, 0))
}

/// Realizes the tree on vertices `0..`: the root is `{0, .., k}`, every
/// attachment gets the next fresh vertex.
pub fn to_complex(tree: &KRootedTree) -> RootedComplex {
    let k = tree.k;
    let mut verts: Vec<Vec<u32>> = vec![Vec::new(); tree.nodes.len()];
    verts[0] = (0..=k as u32).collect();
    let mut next = k as u32 + 1;
    let mut tops: Vec<Vec<u32>> = vec![verts[0].clone()];
    for i in 0..tree.nodes.len() {
        for att in &tree.nodes[i] {
            let v = next;
            next += 1;
            let mut sigma = verts[i].clone();
            sigma.push(v);
            sigma.sort_unstable();
            tops.push(sigma);
            for (pos, &child) in att.iter().enumerate() {
                let mut tuple = verts[i].clone();
                tuple[pos] = v;
                verts[child] = tuple;
            }
        }
    }
    let x = SimplicialComplex::from_simplices(next as usize, tops).expect("valid tree simplices");
    let root = Simplex::from(&verts[0][..]);
    RootedComplex::new(x, root).expect("root present")
}

/// One round of `Q_k`: every non-root `k`-simplex without attachments is
/// free; each attachment with a free face is removed, and what it carried
/// is cut off from the root.
pub fn prune(tree: &KRootedTree) -> KRootedTree {
    let leaf = |i: usize| i != 0 && tree.nodes[i].is_empty();
    let mut out = KRootedTree::bare(tree.k);
    // (old node, new node)
    let mut stack = vec![(0usize, 0usize)];
    while let Some((old, new)) = stack.pop() {
        for att in &tree.nodes[old] {
            if att.iter().any(|&c| leaf(c)) {
                continue;
            }
            out.add_attachment(new);
            let created = out.nodes[new].last().unwrap().clone();
            for (&oc, &nc) in att.iter().zip(&created) {
                stack.push((oc, nc));
            }
        }
    }
    out
}

/// For each node, the number of pruning rounds after which it has no
/// attachments left (truncated leaves count as bare).
fn bare_after(tree: &KRootedTree) -> Vec<usize> {
    let mut a = vec![0usize; tree.nodes.len()];
    // children always have larger ids than their parent
    for i in (0..tree.nodes.len()).rev() {
        a[i] = tree.nodes[i].iter().map(|att| removal_round(att, &a)).max().unwrap_or(0);
    }
    a
}

/// The round in which an attachment is removed: one after its first face
/// goes bare.
fn removal_round(att: &[usize], a: &[usize]) -> usize {
    1 + att.iter().map(|&c| a[c]).min().unwrap_or(0)
}

/// `deg(Q_k^l(T); τ_o)` without materializing the intermediate trees.
pub fn root_degree_after(tree: &KRootedTree, l: usize) -> usize {
    let a = bare_after(tree);
    tree.nodes[0].iter().filter(|att| removal_round(att, &a) > l).count()
}

/// Empirical law of `deg(Q_k^l(PT_k(c)); τ_o)` over `trials` trees sampled
/// to depth `l + 1 + DEPTH_MARGIN`.
pub fn root_degree_after_prunes(k: usize, c: f64, l: usize, trials: usize, seed: u64) -> Result<Histogram<usize>> {
    root_degree_after_prunes_at(k, c, l, trials, seed, l + 1 + DEPTH_MARGIN)
}

/// As [`root_degree_after_prunes`] with an explicit sampling depth, which
/// must be at least `l + 1`: `l` rounds read freeness one generation below
/// the deepest attachment that can survive them.
pub fn root_degree_after_prunes_at(
    k: usize,
    c: f64,
    l: usize,
    trials: usize,
    seed: u64,
    depth: usize,
) -> Result<Histogram<usize>> {
    if depth < l + 1 {
        return Err(Error::InvalidParameter(format!("depth {depth} too shallow for {l} prunings")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("no trials".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..trials {
        let t = sample_pt(k, c, depth, &mut rng)?;
        *counts.entry(root_degree_after(&t, l)).or_default() += 1;
    }
    Ok(crate::traversal::normalize(&counts))
}

/// Binomial pmf over its whole support, computed outward from the mode.
pub fn binomial_pmf(m: u64, p: f64) -> Vec<f64> {
    if p <= 0.0 {
        return vec![1.0];
    }
    if p >= 1.0 {
        let mut v = vec![0.0; m as usize + 1];
        v[m as usize] = 1.0;
        return v;
    }
    let mode = (((m + 1) as f64 * p).floor() as u64).min(m);
    let mut ln = 0.0;
    for i in 1..=mode {
        ln += ((m - mode + i) as f64 / i as f64).ln();
    }
    ln += mode as f64 * p.ln() + (m - mode) as f64 * (-p).ln_1p();
    let mut v = vec![0.0; m as usize + 1];
    v[mode as usize] = ln.exp();
    let odds = p / (1.0 - p);
    for j in mode..m {
        v[j as usize + 1] = v[j as usize] * (m - j) as f64 / (j + 1) as f64 * odds;
    }
    for j in (1..=mode).rev() {
        v[j as usize - 1] = v[j as usize] * j as f64 / ((m - j + 1) as f64 * odds);
    }
    v
}

/// Poisson pmf on `0..=cut`, with `cut` past the mode far enough that the
/// tail is below `1e-16`.
pub fn poisson_pmf(lambda: f64) -> Vec<f64> {
    if lambda <= 0.0 {
        return vec![1.0];
    }
    let mode = lambda.floor() as usize;
    let ln_fact: f64 = (1..=mode).map(|i| (i as f64).ln()).sum();
    let mut v = vec![(-lambda + mode as f64 * lambda.ln() - ln_fact).exp()];
    let mut j = mode;
    loop {
        let next = v[j - mode] * lambda / (j + 1) as f64;
        // geometric tail bound once terms are decreasing
        let ratio = lambda / (j + 2) as f64;
        if next < 1e-18 && ratio < 0.5 {
            break;
        }
        v.push(next);
        j += 1;
    }
    let mut lower = vec![0.0; mode];
    let mut cur = v[0];
    for i in (0..mode).rev() {
        cur *= (i + 1) as f64 / lambda;
        lower[i] = cur;
    }
    lower.extend(v);
    lower
}

/// Exact `½ Σ_j |Bin(m, p)(j) - Po(λ)(j)|`.
pub fn pmf_tv(m: u64, p: f64, lambda: f64) -> f64 {
    let b = binomial_pmf(m, p);
    let q = poisson_pmf(lambda);
    let len = b.len().max(q.len());
    let mut s = 0.0;
    for j in 0..len {
        s += (b.get(j).copied().unwrap_or(0.0) - q.get(j).copied().unwrap_or(0.0)).abs();
    }
    0.5 * s
}

/// Histogram of the Poisson pmf, for comparisons with empirical laws.
pub fn poisson_histogram(lambda: f64) -> Histogram<usize> {
    poisson_pmf(lambda).into_iter().enumerate().filter(|&(_, p)| p > 0.0).collect()
}

/// Law of the radius-`l` class of `(PT_k(c), τ_o)`, from `trials` trees
/// sampled one generation deeper than the ball reaches.
pub fn pt_local_distribution(
    k: usize,
    c: f64,
    l: usize,
    trials: usize,
    seed: u64,
) -> Result<Histogram<crate::traversal::NeighborhoodClass>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("no trials".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut counts = BTreeMap::new();
    for _ in 0..trials {
        let t = sample_pt(k, c, l + 1, &mut rng)?;
        let code = crate::traversal::canonical_code(&to_complex(&t), l)?;
        *counts.entry(code).or_default() += 1;
    }
    Ok(crate::traversal::normalize(&counts))
}

/// Default truncation depth for spectral measures of Poisson trees.
pub const PT_SPECTRAL_DEPTH: usize = 6;

/// Lanczos steps per tree in [`pt_spectral_measure`].
pub const PT_LANCZOS_STEPS: usize = 300;

/// `E'[μ_{(PT_k(c), τ_o)}]` approximated by the mean rooted spectral measure
/// of `trials` trees truncated at `depth`. Convergence in `depth` can be
/// monitored with the Kolmogorov distance between successive depths.
pub fn pt_spectral_measure(k: usize, c: f64, depth: usize, trials: usize, seed: u64) -> Result<SpectralMeasure> {
    if trials == 0 {
        return Err(Error::InvalidParameter("no trials".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut measures = Vec::with_capacity(trials);
    for _ in 0..trials {
        let t = to_complex(&sample_pt(k, c, depth, &mut rng)?);
        measures.push(crate::spectra::rooted_spectral_quadrature(&t.complex, t.root.vertices(), k, PT_LANCZOS_STEPS)?);
    }
    SpectralMeasure::average(&measures)
}
