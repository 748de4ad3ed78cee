//! Finite simplicial complexes on the vertex universe `{0, .., n-1}`.
//!
//! A complex is stored level by level: level `k` is a lexicographically
//! sorted, deduplicated flat array of `k`-simplices, each a strictly
//! increasing run of `k + 1` vertex ids. Membership is a binary search.
//! The empty simplex is implicit.

use std::cmp::Ordering;
use std::fmt;

use crate::combin::for_each_combination;
use crate::error::{Error, Result};

/// A simplex given by its strictly increasing vertex list. The empty list is
/// the empty simplex of dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from a strictly increasing vertex list.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex(format!(
                "vertices {vertices:?} are not strictly increasing"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts the vertices first; duplicates are still an error.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<u32> {
        self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// All `j`-dimensional faces, `-1 <= j <= dim`.
    pub fn faces(&self, j: isize) -> Result<Vec<Simplex>> {
        if j < -1 || j > self.dim() {
            return Err(Error::FaceDimension { j, dim: self.dim() });
        }
        let mut out = Vec::new();
        for_each_combination(&self.0, (j + 1) as usize, |c| out.push(Simplex(c.to_vec())));
        Ok(out)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl From<&[u32]> for Simplex {
    /// Caller guarantees strictly increasing order.
    fn from(v: &[u32]) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v.to_vec())
    }
}

/// Sorted table of `k`-simplices with a fixed stride of `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Level {
    width: usize,
    data: Vec<u32>,
}

impl Level {
    pub fn new(width: usize) -> Self {
        Level { width, data: Vec::new() }
    }

    /// Sorts and deduplicates a flat array of `width`-tuples.
    pub fn from_unsorted(width: usize, data: Vec<u32>) -> Self {
        debug_assert!(width > 0 && data.len() % width == 0);
        let count = data.len() / width;
        let mut order: Vec<u32> = (0..count as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            let a = a as usize * width;
            let b = b as usize * width;
            data[a..a + width].cmp(&data[b..b + width])
        });
        let mut out = Vec::with_capacity(data.len());
        for &i in &order {
            let s = &data[i as usize * width..(i as usize + 1) * width];
            if out.len() >= width && &out[out.len() - width..] == s {
                continue;
            }
            out.extend_from_slice(s);
        }
        Level { width, data: out }
    }

    /// Wraps data that is already sorted and deduplicated.
    pub(crate) fn from_sorted(width: usize, data: Vec<u32>) -> Self {
        debug_assert!(data.len() % width == 0);
        debug_assert!(data
            .chunks_exact(width)
            .zip(data.chunks_exact(width).skip(1))
            .all(|(a, b)| a < b));
        Level { width, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        if self.width == 0 {
            0
        } else {
            self.data.len() / self.width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, u32> {
        // width 0 only occurs for the default empty level
        self.data.chunks_exact(self.width.max(1))
    }

    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    pub fn position(&self, s: &[u32]) -> Option<usize> {
        if s.len() != self.width || self.is_empty() {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(s) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.position(s).is_some()
    }

    /// Keeps the simplices for which `keep[i]` is true.
    pub fn filtered(&self, keep: &[bool]) -> Level {
        let mut data = Vec::new();
        for (i, s) in self.iter().enumerate() {
            if keep[i] {
                data.extend_from_slice(s);
            }
        }
        Level { width: self.width, data }
    }
}

/// A finite simplicial complex on `{0, .., n-1}`, closed under faces.
///
/// `cap` records a dimension truncation: when set, simplices above `cap`
/// were never generated (clique complexes, capped samples) and the complex
/// is the `cap`-skeleton of the modelled object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    cap: Option<usize>,
    levels: Vec<Level>,
}

static EMPTY_LEVEL: Level = Level { width: 0, data: Vec::new() };

impl SimplicialComplex {
    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, cap: None, levels: Vec::new() }
    }

    /// Face closure of the given simplices.
    pub fn from_simplices<I, S>(n: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for s in simplices {
            let s = s.as_ref();
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSimplex(format!("{s:?} is not strictly increasing")));
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if s.is_empty() {
                continue;
            }
            let k = s.len() - 1;
            if raw.len() <= k {
                raw.resize(k + 1, Vec::new());
            }
            raw[k].extend_from_slice(s);
        }
        let mut levels: Vec<Level> =
            raw.into_iter().enumerate().map(|(k, d)| Level::from_unsorted(k + 1, d)).collect();
        close_levels(&mut levels);
        let mut out = SimplicialComplex { n, cap: None, levels };
        out.trim();
        Ok(out)
    }

    /// Assembles a complex from per-level tables. The caller guarantees
    /// closure and vertex range; debug builds verify it.
    pub(crate) fn from_levels(n: usize, cap: Option<usize>, levels: Vec<Level>) -> Self {
        let mut out = SimplicialComplex { n, cap, levels };
        out.trim();
        debug_assert!(out.is_closed(), "levels are not face-closed");
        out
    }

    fn trim(&mut self) {
        while self.levels.last().is_some_and(|l| l.is_empty()) {
            self.levels.pop();
        }
    }

    /// The full complex `2^[n]` truncated at dimension `cap`.
    pub fn full(n: usize, cap: usize) -> Self {
        let vertices: Vec<u32> = (0..n as u32).collect();
        let mut levels = Vec::new();
        for k in 0..=cap.min(n.saturating_sub(1)) {
            let mut data = Vec::new();
            for_each_combination(&vertices, k + 1, |c| data.extend_from_slice(c));
            levels.push(Level::from_sorted(k + 1, data));
        }
        let cap = if cap + 1 >= n { None } else { Some(cap) };
        Self::from_levels(n, cap, levels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.cap = cap;
        self
    }

    /// Dimension of the complex, -1 for the void/empty complex.
    pub fn dim(&self) -> isize {
        self.levels.len() as isize - 1
    }

    pub fn level(&self, k: usize) -> &Level {
        self.levels.get(k).unwrap_or(&EMPTY_LEVEL)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `f_k`, with `f_{-1} = 1`.
    pub fn f(&self, k: isize) -> usize {
        match k {
            -1 => 1,
            k if k < -1 => 0,
            k => self.level(k as usize).len(),
        }
    }

    /// `(f_0, f_1, .., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Level::len).collect()
    }

    /// Reduced Euler characteristic `sum_{k >= -1} (-1)^k f_k`.
    pub fn euler_reduced(&self) -> i64 {
        let mut acc = -1i64;
        for (k, l) in self.levels.iter().enumerate() {
            let f = l.len() as i64;
            acc += if k % 2 == 0 { f } else { -f };
        }
        acc
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        if s.is_empty() {
            return true;
        }
        self.level(s.len() - 1).contains(s)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        if s.is_empty() {
            return Some(0);
        }
        self.level(s.len() - 1).position(s)
    }

    /// Number of `(k+1)`-simplices containing the `k`-simplex `tau`.
    pub fn degree(&self, tau: &[u32]) -> Result<usize> {
        if !self.contains(tau) {
            return Err(Error::MissingSimplex(tau.to_vec()));
        }
        let up = self.level(tau.len());
        if up.is_empty() {
            return Ok(0);
        }
        if tau.is_empty() {
            return Ok(up.len());
        }
        // choose the cheaper of probing every extra vertex or scanning the level
        if self.n * (tau.len() + 1) < up.len() {
            let mut buf = Vec::with_capacity(tau.len() + 1);
            let mut count = 0;
            for w in 0..self.n as u32 {
                if tau.contains(&w) {
                    continue;
                }
                insert_sorted(tau, w, &mut buf);
                if up.contains(&buf) {
                    count += 1;
                }
            }
            Ok(count)
        } else {
            Ok(up.iter().filter(|s| is_subset(tau, s)).count())
        }
    }

    /// External `i`-simplices: `i`-simplices on `[n]` not in the complex
    /// whose whole boundary is present.
    pub fn external_simplices(&self, i: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if i == 0 {
            let verts = self.level(0);
            for v in 0..self.n as u32 {
                if !verts.contains(&[v]) {
                    out.push(Simplex(vec![v]));
                }
            }
            return out;
        }
        let below = self.level(i - 1);
        let here = self.level(i);
        let mut cand = Vec::with_capacity(i + 1);
        let mut face = Vec::with_capacity(i);
        for s in below.iter() {
            let top = *s.last().unwrap();
            for w in top + 1..self.n as u32 {
                cand.clear();
                cand.extend_from_slice(s);
                cand.push(w);
                if here.contains(&cand) {
                    continue;
                }
                if all_facets_present(&cand, below, &mut face) {
                    out.push(Simplex(cand.clone()));
                }
            }
        }
        out
    }

    /// Returns a new complex with `sigma` and all its faces added.
    pub fn close_and_insert(&self, sigma: &Simplex) -> Result<Self> {
        if let Some(&v) = sigma.vertices().iter().find(|&&v| v as usize >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if sigma.vertices().is_empty() || self.contains(sigma.vertices()) {
            return Ok(self.clone());
        }
        let mut levels = self.levels.clone();
        let top = sigma.vertices().len() - 1;
        if levels.len() <= top {
            for k in levels.len()..=top {
                levels.push(Level::new(k + 1));
            }
        }
        for j in 0..=top {
            let mut data = std::mem::take(&mut levels[j].data);
            for_each_combination(sigma.vertices(), j + 1, |c| data.extend_from_slice(c));
            levels[j] = Level::from_unsorted(j + 1, data);
        }
        Ok(SimplicialComplex { n: self.n, cap: self.cap, levels })
    }

    /// The `k`-skeleton.
    pub fn skeleton(&self, k: usize) -> Self {
        let levels = self.levels.iter().take(k + 1).cloned().collect();
        let cap = match self.cap {
            Some(c) => Some(c.min(k)),
            None if self.dim() > k as isize => Some(k),
            None => None,
        };
        SimplicialComplex { n: self.n, cap, levels }
    }

    /// Checks the face-closure and vertex-range invariants exhaustively.
    pub fn is_closed(&self) -> bool {
        let mut face = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            if level.width != k + 1 {
                return false;
            }
            for s in level.iter() {
                if s.iter().any(|&v| v as usize >= self.n) {
                    return false;
                }
                if k > 0 && !all_facets_present(s, &self.levels[k - 1], &mut face) {
                    return false;
                }
            }
        }
        true
    }

    /// Simplices not strictly contained in any other simplex, ordered by
    /// dimension then lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..self.levels.len() {
            let cof = CofaceIndex::build(self, k);
            for (i, s) in self.levels[k].iter().enumerate() {
                if cof.degree(i) == 0 {
                    out.push(Simplex(s.to_vec()));
                }
            }
        }
        out
    }

    /// Removes the listed simplices (given per level as keep-masks) and
    /// everything containing them.
    pub fn retain(&self, keep: &[Vec<bool>]) -> Self {
        let mut levels: Vec<Level> = Vec::with_capacity(self.levels.len());
        let mut face = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            let mask = keep.get(k);
            let mut data = Vec::new();
            for (i, s) in level.iter().enumerate() {
                if mask.is_some_and(|m| !m[i]) {
                    continue;
                }
                if k > 0 && !all_facets_present(s, &levels[k - 1], &mut face) {
                    continue;
                }
                data.extend_from_slice(s);
            }
            levels.push(Level::from_sorted(k + 1, data));
        }
        let mut out = SimplicialComplex { n: self.n, cap: self.cap, levels };
        out.trim();
        out
    }

    /// Iterates over every nonempty simplex, level by level.
    pub fn simplices(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.levels.iter().flat_map(|l| l.iter())
    }
}

/// Adds all faces of every stored simplex, top level down.
fn close_levels(levels: &mut [Level]) {
    for k in (1..levels.len()).rev() {
        let (lower, upper) = levels.split_at_mut(k);
        let below = &mut lower[k - 1];
        let mut extra = Vec::new();
        let mut face = Vec::with_capacity(k);
        for s in upper[0].iter() {
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                if !below.contains(&face) {
                    extra.extend_from_slice(&face);
                }
            }
        }
        if !extra.is_empty() {
            let mut data = std::mem::take(&mut below.data);
            data.extend_from_slice(&extra);
            *below = Level::from_unsorted(k, data);
        }
    }
}

pub(crate) fn all_facets_present(s: &[u32], below: &Level, face: &mut Vec<u32>) -> bool {
    for skip in 0..s.len() {
        face.clear();
        face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
        if !below.contains(face) {
            return false;
        }
    }
    true
}

/// `a` and `b` sorted; is every element of `a` in `b`?
pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// `out = sorted(s ∪ {w})`, assuming `w ∉ s`.
pub(crate) fn insert_sorted(s: &[u32], w: u32, out: &mut Vec<u32>) {
    out.clear();
    let pos = s.partition_point(|&x| x < w);
    out.extend_from_slice(&s[..pos]);
    out.push(w);
    out.extend_from_slice(&s[pos..]);
}

/// For level `k`, the `(k+1)`-simplices containing each `k`-simplex, as
/// indices into level `k + 1` (CSR layout, ascending).
#[derive(Clone, Debug)]
pub struct CofaceIndex {
    offsets: Vec<usize>,
    cofaces: Vec<u32>,
    /// For each entry, the position of the omitted vertex inside the coface.
    omitted: Vec<u8>,
}

impl CofaceIndex {
    pub fn build(x: &SimplicialComplex, k: usize) -> Self {
        let here = x.level(k);
        let up = x.level(k + 1);
        let mut counts = vec![0usize; here.len() + 1];
        let mut pairs: Vec<(u32, u32, u8)> = Vec::with_capacity(up.len() * (k + 2));
        let mut face = Vec::with_capacity(k + 1);
        for (j, s) in up.iter().enumerate() {
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let i = here.position(&face).expect("complex is face-closed");
                counts[i + 1] += 1;
                pairs.push((i as u32, j as u32, skip as u8));
            }
        }
        for i in 0..here.len() {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut cofaces = vec![0u32; pairs.len()];
        let mut omitted = vec![0u8; pairs.len()];
        // pairs are generated in increasing coface order, so each bucket stays sorted
        for (i, j, skip) in pairs {
            let slot = fill[i as usize];
            cofaces[slot] = j;
            omitted[slot] = skip;
            fill[i as usize] += 1;
        }
        CofaceIndex { offsets: counts, cofaces, omitted }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn cofaces(&self, i: usize) -> &[u32] {
        &self.cofaces[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Position (in increasing vertex order) of the vertex of each coface
    /// that is not in simplex `i`.
    pub fn omitted(&self, i: usize) -> &[u8] {
        &self.omitted[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// A complex with a distinguished `k`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedComplex {
    pub complex: SimplicialComplex,
    pub root: Simplex,
}

impl RootedComplex {
    pub fn new(complex: SimplicialComplex, root: Simplex) -> Result<Self> {
        if root.vertices().is_empty() || !complex.contains(root.vertices()) {
            return Err(Error::MissingSimplex(root.into_vertices()));
        }
        Ok(RootedComplex { complex, root })
    }

    /// Dimension of the root.
    pub fn k(&self) -> usize {
        self.root.vertices().len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, s: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn insert_closes_and_is_idempotent() {
        let tri = Simplex::new(vec![1, 2, 3]).unwrap();
        let x = SimplicialComplex::empty(4).close_and_insert(&tri).unwrap();
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
        assert_eq!(x.close_and_insert(&tri).unwrap(), x);
        let e = Simplex::new(vec![1, 2]).unwrap();
        let y = SimplicialComplex::empty(4).close_and_insert(&e).unwrap().close_and_insert(&tri).unwrap();
        assert_eq!(x, y);
        let bad = Simplex::new(vec![1, 4]).unwrap();
        assert!(matches!(x.close_and_insert(&bad), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn faces_of_simplices() {
        let s = Simplex::new(vec![1, 2, 3]).unwrap();
        let f: Vec<_> = s.faces(1).unwrap().into_iter().map(Simplex::into_vertices).collect();
        assert_eq!(f, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(s.faces(2).unwrap(), vec![s.clone()]);
        assert_eq!(Simplex::new(vec![5]).unwrap().faces(-1).unwrap(), vec![Simplex::empty()]);
        assert!(s.faces(3).is_err());
        assert!(s.faces(-2).is_err());
        assert!(Simplex::new(vec![2, 1]).is_err());
    }

    #[test]
    fn degrees() {
        let hollow = cx(4, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(hollow.degree(&[1, 2]).unwrap(), 0);
        let filled = cx(4, &[&[1, 2, 3]]);
        assert_eq!(filled.degree(&[1, 2]).unwrap(), 1);
        let full = SimplicialComplex::full(4, 3);
        assert_eq!(full.degree(&[1, 2]).unwrap(), 2);
        assert_eq!(full.degree(&[0]).unwrap(), 3);
        assert!(hollow.degree(&[0, 1]).is_err());
    }

    #[test]
    fn external_simplices_examples() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let e = hollow.external_simplices(2);
        assert_eq!(e, vec![Simplex::new(vec![0, 1, 2]).unwrap()]);
        let filled = cx(3, &[&[0, 1, 2]]);
        assert!(filled.external_simplices(2).is_empty());
        let two_edges = cx(4, &[&[0, 1], &[2, 3]]);
        let e: Vec<_> = two_edges.external_simplices(1).into_iter().map(Simplex::into_vertices).collect();
        assert_eq!(e, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        let partial = cx(3, &[&[0], &[2]]);
        assert_eq!(partial.external_simplices(0), vec![Simplex::new(vec![1]).unwrap()]);
    }

    #[test]
    fn euler_characteristics() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(hollow.f_vector(), vec![3, 3]);
        assert_eq!(hollow.euler_reduced(), -1);
        assert_eq!(cx(1, &[&[0]]).euler_reduced(), 0);
        let sphere = SimplicialComplex::full(4, 2);
        assert_eq!(sphere.euler_reduced(), 1);
        assert_eq!(SimplicialComplex::empty(3).euler_reduced(), -1);
    }

    #[test]
    fn double_counting_on_full_complex() {
        let x = SimplicialComplex::full(6, 3);
        for k in 0..3 {
            let sum: usize = x.level(k).iter().map(|t| x.degree(t).unwrap()).sum();
            assert_eq!(sum, (k + 2) * x.f(k as isize + 1));
        }
    }

    #[test]
    fn coface_index_agrees_with_degree() {
        let x = cx(6, &[&[0, 1, 2], &[1, 2, 3], &[1, 2, 4, 5], &[0, 5]]);
        for k in 0..3 {
            let idx = CofaceIndex::build(&x, k);
            for (i, t) in x.level(k).iter().enumerate() {
                assert_eq!(idx.degree(i), x.degree(t).unwrap());
                for (&c, &o) in idx.cofaces(i).iter().zip(idx.omitted(i)) {
                    let up = x.level(k + 1).get(c as usize);
                    let mut rest: Vec<u32> = up.to_vec();
                    rest.remove(o as usize);
                    assert_eq!(rest, t);
                }
            }
        }
    }

    #[test]
    fn maximal_simplices_and_retain() {
        let x = cx(5, &[&[0, 1, 2], &[2, 3], &[4]]);
        let m: Vec<_> = x.maximal_simplices().into_iter().map(Simplex::into_vertices).collect();
        assert_eq!(m, vec![vec![4], vec![2, 3], vec![0, 1, 2]]);
        // dropping edge {0,1} removes the triangle too
        let mut keep: Vec<Vec<bool>> = x.levels().iter().map(|l| vec![true; l.len()]).collect();
        keep[1][x.level(1).position(&[0, 1]).unwrap()] = false;
        let y = x.retain(&keep);
        assert_eq!(y.f_vector(), vec![5, 3]);
        assert!(y.is_closed());
    }

    #[test]
    fn skeleton_records_cap() {
        let x = SimplicialComplex::full(5, 4);
        assert_eq!(x.cap(), None);
        let s = x.skeleton(1);
        assert_eq!(s.cap(), Some(1));
        assert_eq!(s.f_vector(), vec![5, 10]);
    }
}
