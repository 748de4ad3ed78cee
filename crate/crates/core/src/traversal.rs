//! Balls around a root `k`-simplex, the breadth-first simplex traversal,
//! canonical codes of rooted neighborhoods and empirical local laws.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::complex::{CofaceIndex, RootedComplex, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Probability masses keyed by class.
pub type Histogram<K> = BTreeMap<K, f64>;

/// Largest vertex count for brute-force canonical labeling of non-tree balls.
pub const BRUTE_FORCE_VERTICES: usize = 12;

/// Budget of labelings tried by the brute-force search.
const LABELING_BUDGET: u64 = 200_000;

/// Coface tables of a complex from level `k` up, shared by many queries.
pub struct Explorer<'a> {
    x: &'a SimplicialComplex,
    k: usize,
    /// `up[j]` indexes the cofaces of level `k + j`.
    up: Vec<CofaceIndex>,
}

impl<'a> Explorer<'a> {
    pub fn new(x: &'a SimplicialComplex, k: usize) -> Self {
        let top = x.dim().max(k as isize) as usize;
        let up = (k..top).map(|j| CofaceIndex::build(x, j)).collect();
        Explorer { x, k, up }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.x
    }

    fn root_index(&self, tau: &[u32]) -> Result<usize> {
        if tau.len() != self.k + 1 {
            return Err(Error::InvalidParameter(format!("root {tau:?} is not a {}-simplex", self.k)));
        }
        self.x.level(self.k).position(tau).ok_or_else(|| Error::MissingSimplex(tau.to_vec()))
    }

    /// `(X, τ)_l`: starting from `K(τ)`, each round adds the closure of every
    /// simplex containing a `k`-simplex already present.
    pub fn ball(&self, tau: &[u32], l: usize) -> Result<RootedComplex> {
        let root = self.root_index(tau)?;
        let k = self.k;
        let mut have: HashSet<u32> = HashSet::from([root as u32]);
        let mut frontier = vec![root as u32];
        let mut seen: HashSet<(usize, u32)> = HashSet::new();
        let mut tops: Vec<Vec<u32>> = vec![tau.to_vec()];
        let mut face = Vec::new();
        for _ in 0..l {
            if frontier.is_empty() {
                break;
            }
            let mut found: Vec<(usize, u32)> = Vec::new();
            for &s in &frontier {
                self.upward(s, &mut seen, &mut found);
            }
            frontier.clear();
            for &(j, idx) in &found {
                let sigma = self.x.level(j).get(idx as usize);
                tops.push(sigma.to_vec());
                crate::combin::for_each_combination(sigma, k + 1, |c| {
                    face.clear();
                    face.extend_from_slice(c);
                    let i = self.x.level(k).position(&face).expect("face-closed") as u32;
                    if have.insert(i) {
                        frontier.push(i);
                    }
                });
            }
        }
        let ball = SimplicialComplex::from_simplices(self.x.n(), tops)?.with_cap(self.x.cap());
        RootedComplex::new(ball, Simplex::from(tau))
    }

    /// All simplices strictly containing the `k`-simplex `s` not yet in `seen`.
    fn upward(&self, s: u32, seen: &mut HashSet<(usize, u32)>, found: &mut Vec<(usize, u32)>) {
        let mut layer: Vec<u32> = vec![s];
        for (j, idx) in self.up.iter().enumerate() {
            let mut next = Vec::new();
            for &t in &layer {
                for &c in idx.cofaces(t as usize) {
                    if seen.insert((self.k + j + 1, c)) {
                        found.push((self.k + j + 1, c));
                    }
                    next.push(c);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                break;
            }
            layer = next;
        }
    }

    /// Breadth-first traversal from `tau`. Only `k`-simplices in layers
    /// below `max_layer` are expanded (all of them when `None`).
    pub fn traverse(&self, tau: &[u32], max_layer: Option<usize>) -> Result<TraversalRecord> {
        let root = self.root_index(tau)?;
        let k = self.k;
        let level_k = self.x.level(k);
        let mut verts: HashSet<u32> = tau.iter().copied().collect();
        let mut in_tree: HashSet<u32> = HashSet::new();
        let mut discovered: Vec<(u32, usize)> = vec![(root as u32, 0)];
        let mut rec = TraversalRecord {
            k,
            m: Vec::new(),
            c: Vec::new(),
            tau_order: Vec::new(),
            layer: Vec::new(),
            attachments: Vec::new(),
            discovered: Vec::new(),
            tree: SimplicialComplex::empty(self.x.n()),
            truncated: false,
        };
        let mut sigmas: Vec<Vec<u32>> = vec![tau.to_vec()];
        let mut i = 0;
        let mut face = Vec::with_capacity(k + 1);
        while i < discovered.len() {
            let (t, layer) = discovered[i];
            if max_layer.is_some_and(|ml| layer >= ml) {
                rec.truncated = true;
                break;
            }
            let tv = level_k.get(t as usize);
            let (mut m, mut c) = (0usize, 0usize);
            let mut new_here: Vec<(u32, u32)> = Vec::new();
            if let Some(idx) = self.up.first() {
                for (&sig, &om) in idx.cofaces(t as usize).iter().zip(idx.omitted(t as usize)) {
                    let v = self.x.level(k + 1).get(sig as usize)[om as usize];
                    if !verts.contains(&v) {
                        new_here.push((sig, v));
                    } else if !in_tree.contains(&sig) {
                        c += 1;
                    }
                }
            }
            // cofaces come in increasing lexicographic order already
            let mut atts = Vec::with_capacity(new_here.len());
            for &(sig, v) in &new_here {
                m += 1;
                in_tree.insert(sig);
                verts.insert(v);
                let sv = self.x.level(k + 1).get(sig as usize);
                sigmas.push(sv.to_vec());
                // faces of σ other than τ_i, ascending: drop each old vertex in turn
                let mut kids: Vec<(Vec<u32>, u32)> = Vec::with_capacity(k + 1);
                for &drop in tv {
                    face.clear();
                    face.extend(sv.iter().copied().filter(|&w| w != drop));
                    kids.push((face.clone(), drop));
                }
                kids.sort();
                let mut ids = Vec::with_capacity(k + 1);
                for (f, drop) in kids {
                    let fi = level_k.position(&f).expect("face-closed") as u32;
                    ids.push((discovered.len(), drop));
                    discovered.push((fi, layer + 1));
                }
                atts.push(Attachment { vertex: v, children: ids });
            }
            rec.m.push(m);
            rec.c.push(c);
            rec.tau_order.push(Simplex::from(tv));
            rec.layer.push(layer);
            rec.attachments.push(atts);
            i += 1;
        }
        rec.discovered = discovered.iter().map(|&(t, l)| (Simplex::from(level_k.get(t as usize)), l)).collect();
        rec.tree = SimplicialComplex::from_simplices(self.x.n(), sigmas)?;
        Ok(rec)
    }
}

/// A `(k+1)`-simplex added to the tree at one step: the new vertex and the
/// new `k`-faces as `(index into discovered, vertex of τ_i it omits)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub vertex: u32,
    pub children: Vec<(usize, u32)>,
}

/// Output of the breadth-first traversal. Step `i` (0-based here) visits
/// `tau_order[i]`, attaches `m[i]` fresh `(k+1)`-simplices and sees `c[i]`
/// cross simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraversalRecord {
    pub k: usize,
    pub m: Vec<usize>,
    pub c: Vec<usize>,
    pub tau_order: Vec<Simplex>,
    pub layer: Vec<usize>,
    pub attachments: Vec<Vec<Attachment>>,
    /// `k`-simplices of the tree in traversal order, with their layer.
    pub discovered: Vec<(Simplex, usize)>,
    /// The explored `(k+1)`-tree `T_I`.
    #[serde(skip)]
    pub tree: SimplicialComplex,
    /// Whether `max_layer` stopped the traversal early.
    pub truncated: bool,
}

impl TraversalRecord {
    /// The stop index `I`.
    pub fn stop(&self) -> usize {
        self.m.len()
    }
}

pub fn ball(x: &SimplicialComplex, tau: &[u32], l: usize) -> Result<RootedComplex> {
    Explorer::new(x, tau.len().saturating_sub(1)).ball(tau, l)
}

pub fn bfs_traverse(x: &SimplicialComplex, tau: &[u32], k: usize, max_layer: Option<usize>) -> Result<TraversalRecord> {
    Explorer::new(x, k).traverse(tau, max_layer)
}

/// True iff no cross simplex was seen (over the explored part).
pub fn is_tree_neighborhood(record: &TraversalRecord) -> bool {
    record.c.iter().all(|&c| c == 0)
}

/// Label-invariant code of a rooted neighborhood.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NeighborhoodClass {
    pub code: String,
    pub is_tree: bool,
    /// False when the ball was too large for exact labeling; the code is then
    /// an invariant that may merge non-isomorphic balls.
    pub exact: bool,
}

/// Canonical code of `(X, τ)_l`.
pub fn canonical_code(rooted: &RootedComplex, l: usize) -> Result<NeighborhoodClass> {
    let b = ball(&rooted.complex, rooted.root.vertices(), l)?;
    code_of_ball(&b)
}

/// Canonical code of a complex that is already the ball of interest.
pub fn code_of_ball(b: &RootedComplex) -> Result<NeighborhoodClass> {
    let k = b.k();
    let ex = Explorer::new(&b.complex, k);
    let rec = ex.traverse(b.root.vertices(), None)?;
    if is_tree_neighborhood(&rec) && rec.tree.f_vector() == b.complex.f_vector() {
        return Ok(NeighborhoodClass { code: format!("T{k}:{}", tree_code(&rec)), is_tree: true, exact: true });
    }
    Ok(graph_code(b))
}

/// Minimum over orderings of the root vertices of the ordered tree code.
fn tree_code(rec: &TraversalRecord) -> String {
    // children of each discovered k-simplex: per attachment, child index by omitted vertex
    let mut kids: Vec<Vec<(u32, &[(usize, u32)])>> = vec![Vec::new(); rec.discovered.len()];
    for (i, atts) in rec.attachments.iter().enumerate() {
        for a in atts {
            kids[i].push((a.vertex, &a.children));
        }
    }
    let root: Vec<u32> = rec.discovered[0].0.vertices().to_vec();
    let mut best: Option<String> = None;
    for_each_permutation(&root, |order| {
        let mut s = String::new();
        ordered_code(&kids, 0, order, &mut s);
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    });
    best.unwrap_or_default()
}

/// Code of the subtree at node `node` whose vertices carry the order
/// `order`. An attachment lists the codes of its new faces in the order of
/// the vertex each omits; the new vertex takes the omitted one's place.
fn ordered_code(kids: &[Vec<(u32, &[(usize, u32)])>], node: usize, order: &[u32], out: &mut String) {
    out.push('(');
    let mut parts: Vec<String> = Vec::with_capacity(kids[node].len());
    for &(v, children) in &kids[node] {
        let mut a = String::from("[");
        for (pos, &w) in order.iter().enumerate() {
            let &(child, _) = children.iter().find(|c| c.1 == w).expect("one face per omitted vertex");
            let mut child_order = order.to_vec();
            child_order[pos] = v;
            ordered_code(kids, child, &child_order, &mut a);
        }
        a.push(']');
        parts.push(a);
    }
    parts.sort_unstable();
    parts.iter().for_each(|p| out.push_str(p));
    out.push(')');
}

fn for_each_permutation(items: &[u32], mut f: impl FnMut(&[u32])) {
    fn rec(v: &mut Vec<u32>, i: usize, f: &mut dyn FnMut(&[u32])) {
        if i == v.len() {
            f(v);
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            rec(v, i + 1, f);
            v.swap(i, j);
        }
    }
    let mut v = items.to_vec();
    rec(&mut v, 0, &mut f);
}

/// Colour refinement on vertices: root membership and containing-simplex
/// counts, refined by the colours of co-simplices.
fn refined_colours(x: &SimplicialComplex, root: &[u32], verts: &[u32]) -> Vec<u64> {
    let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let simplices: Vec<&[u32]> = x.simplices().collect();
    let mut colour: Vec<u64> = verts.iter().map(|v| u64::from(!root.contains(v))).collect();
    for _ in 0..verts.len() {
        let mut sig: Vec<Vec<(usize, Vec<u64>)>> = vec![Vec::new(); verts.len()];
        for s in &simplices {
            let mut cs: Vec<u64> = s.iter().map(|v| colour[pos[v]]).collect();
            cs.sort_unstable();
            for v in s.iter() {
                sig[pos[v]].push((s.len(), cs.clone()));
            }
        }
        let keyed: Vec<(u64, Vec<(usize, Vec<u64>)>)> = sig
            .into_iter()
            .enumerate()
            .map(|(i, mut s)| {
                s.sort_unstable();
                (colour[i], s)
            })
            .collect();
        let mut distinct: Vec<&(u64, Vec<(usize, Vec<u64>)>)> = keyed.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u64> = keyed.iter().map(|kv| distinct.binary_search(&kv).unwrap() as u64).collect();
        let before = colour.iter().collect::<HashSet<_>>().len();
        let after = next.iter().collect::<HashSet<_>>().len();
        colour = next;
        if after == before {
            break;
        }
    }
    colour
}

/// Brute-force canonical form over colour-respecting relabelings, or an
/// inexact invariant when the search is too large.
fn graph_code(b: &RootedComplex) -> NeighborhoodClass {
    let x = &b.complex;
    let root = b.root.vertices();
    let verts: Vec<u32> = x.level(0).iter().map(|v| v[0]).collect();
    let colour = refined_colours(x, root, &verts);
    let mut cells: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        cells.entry(colour[i]).or_default().push(v);
    }
    let header = {
        let sizes: Vec<String> = cells.iter().map(|(c, vs)| format!("{c}x{}", vs.len())).collect();
        format!("G{}:{:?}:{}", b.k(), x.f_vector(), sizes.join(","))
    };
    let work: u64 = cells.values().map(|c| (1..=c.len() as u64).product::<u64>()).fold(1u64, |a, b| a.saturating_mul(b));
    if verts.len() > BRUTE_FORCE_VERTICES || work > LABELING_BUDGET {
        return NeighborhoodClass { code: format!("U{header}"), is_tree: false, exact: false };
    }
    let maximal: Vec<Simplex> = x.maximal_simplices();
    let cell_list: Vec<Vec<u32>> = cells.into_values().collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    let mut label: HashMap<u32, u32> = HashMap::new();
    fn assign(
        cells: &[Vec<u32>],
        ci: usize,
        next: u32,
        label: &mut HashMap<u32, u32>,
        maximal: &[Simplex],
        best: &mut Option<Vec<Vec<u32>>>,
    ) {
        if ci == cells.len() {
            let mut form: Vec<Vec<u32>> = maximal
                .iter()
                .map(|s| {
                    let mut r: Vec<u32> = s.vertices().iter().map(|v| label[v]).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            form.sort();
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
            return;
        }
        for_each_permutation(&cells[ci], |perm| {
            for (i, &v) in perm.iter().enumerate() {
                label.insert(v, next + i as u32);
            }
            assign(cells, ci + 1, next + perm.len() as u32, label, maximal, best);
        });
    }
    assign(&cell_list, 0, 0, &mut label, &maximal, &mut best);
    let form = best.unwrap_or_default();
    let body: Vec<String> =
        form.iter().map(|s| s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
    NeighborhoodClass { code: format!("{header}|{}", body.join(";")), is_tree: false, exact: true }
}

/// `2^{-L}` with `L` the largest radius at which the balls are isomorphic;
/// 0 when they agree up to the radius where both stop growing. Errors if
/// an inexact code would decide the answer.
pub fn local_distance(a: &RootedComplex, b: &RootedComplex) -> Result<f64> {
    if a.k() != b.k() {
        return Ok(1.0);
    }
    let (ea, eb) = (Explorer::new(&a.complex, a.k()), Explorer::new(&b.complex, b.k()));
    let mut prev: Option<(Vec<usize>, Vec<usize>)> = None;
    for l in 0.. {
        let (ba, bb) = (ea.ball(a.root.vertices(), l)?, eb.ball(b.root.vertices(), l)?);
        let (ca, cb) = (code_of_ball(&ba)?, code_of_ball(&bb)?);
        if !(ca.exact && cb.exact) {
            return Err(Error::Numeric(format!("radius-{l} balls too large to compare exactly")));
        }
        if ca != cb {
            return Ok(if l == 0 { 1.0 } else { 0.5f64.powi(l as i32 - 1) });
        }
        let sizes = (ba.complex.f_vector(), bb.complex.f_vector());
        if prev.as_ref() == Some(&sizes) {
            return Ok(0.0);
        }
        prev = Some(sizes);
    }
    unreachable!()
}

/// `λ_k(X)` truncated at radius `l`: the law of the class of the radius-`l`
/// ball around a uniform `k`-simplex.
pub fn empirical_local_distribution(x: &SimplicialComplex, k: usize, l: usize) -> Result<Histogram<NeighborhoodClass>> {
    let fk = x.f(k as isize);
    if fk == 0 {
        return Err(Error::InvalidParameter(format!("no {k}-simplices")));
    }
    let ex = Explorer::new(x, k);
    let mut counts: HashMap<NeighborhoodClass, usize> = HashMap::new();
    for tau in x.level(k).iter() {
        let b = ex.ball(tau, l)?;
        *counts.entry(code_of_ball(&b)?).or_default() += 1;
    }
    Ok(counts.into_iter().map(|(c, n)| (c, n as f64 / fk as f64)).collect())
}

/// `½ Σ |h1 - h2|` over the union of supports.
pub fn tv_distance<K: Ord>(h1: &Histogram<K>, h2: &Histogram<K>) -> f64 {
    let mut s = 0.0;
    for (key, &p) in h1 {
        s += (p - h2.get(key).copied().unwrap_or(0.0)).abs();
    }
    for (key, &q) in h2 {
        if !h1.contains_key(key) {
            s += q.abs();
        }
    }
    0.5 * s
}

/// Law of `deg(X; τ)` for a uniform `τ ∈ F_k(X)`.
pub fn root_degree_histogram(x: &SimplicialComplex, k: usize) -> Result<Histogram<usize>> {
    let fk = x.f(k as isize);
    if fk == 0 {
        return Err(Error::InvalidParameter(format!("no {k}-simplices")));
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    if (k as isize) < x.dim() {
        let idx = CofaceIndex::build(x, k);
        for i in 0..fk {
            *counts.entry(idx.degree(i)).or_default() += 1;
        }
    } else {
        counts.insert(0, fk);
    }
    Ok(counts.into_iter().map(|(d, n)| (d, n as f64 / fk as f64)).collect())
}

/// Normalizes integer counts into a histogram.
pub fn normalize<K: Ord + Clone>(counts: &BTreeMap<K, usize>) -> Histogram<K> {
    let total: usize = counts.values().sum();
    counts.iter().map(|(k, &n)| (k.clone(), n as f64 / total.max(1) as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, s: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n, s.iter().copied()).unwrap()
    }

    fn rooted(x: &SimplicialComplex, tau: &[u32]) -> RootedComplex {
        RootedComplex::new(x.clone(), Simplex::from(tau)).unwrap()
    }

    #[test]
    fn balls() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(ball(&hollow, &[0], 0).unwrap().complex.f_vector(), vec![1]);
        let b1 = ball(&hollow, &[0], 1).unwrap().complex;
        assert_eq!(b1, cx(3, &[&[0, 1], &[0, 2]]));
        assert_eq!(ball(&hollow, &[0], 2).unwrap().complex, hollow);
        let filled = cx(4, &[&[0, 1, 2], &[2, 3]]);
        assert_eq!(ball(&filled, &[0, 1], 0).unwrap().complex.f_vector(), vec![2, 1]);
        assert!(ball(&filled, &[0, 3], 1).is_err());
    }

    #[test]
    fn traversal_examples() {
        let path = cx(3, &[&[0, 1], &[1, 2]]);
        let r = bfs_traverse(&path, &[0], 0, None).unwrap();
        assert_eq!((r.m.clone(), r.c.clone(), r.stop()), (vec![1, 1, 0], vec![0, 0, 0], 3));
        assert!(is_tree_neighborhood(&r));
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let r = bfs_traverse(&hollow, &[0], 0, None).unwrap();
        assert_eq!(r.m, vec![2, 0, 0]);
        assert_eq!(r.c[1], 1);
        assert!(!is_tree_neighborhood(&r));
        let lone = cx(3, &[&[0, 1], &[2]]);
        let r = bfs_traverse(&lone, &[0, 1], 1, None).unwrap();
        assert_eq!((r.m.clone(), r.c.clone(), r.stop()), (vec![0], vec![0], 1));
        // f_k(T_I) = 1 + (k+1) Σ m_i
        let x = cx(6, &[&[0, 1, 2], &[1, 2, 3], &[0, 1, 4], &[3, 4, 5]]);
        let r = bfs_traverse(&x, &[1, 2], 1, None).unwrap();
        assert_eq!(r.tree.f(1), 1 + 2 * r.m.iter().sum::<usize>());
    }

    #[test]
    fn codes() {
        let star_a = cx(4, &[&[0, 1], &[0, 2], &[0, 3]]);
        let star_b = cx(4, &[&[0, 3], &[1, 3], &[2, 3]]);
        let a = canonical_code(&rooted(&star_a, &[0]), 1).unwrap();
        let b = canonical_code(&rooted(&star_b, &[3]), 1).unwrap();
        assert_eq!(a, b);
        assert!(a.is_tree);
        let path = cx(3, &[&[0, 1], &[1, 2]]);
        let end = canonical_code(&rooted(&path, &[0]), 2).unwrap();
        let mid = canonical_code(&rooted(&path, &[1]), 2).unwrap();
        assert_ne!(end, mid);
        // k = 1 tree: the two faces of an attachment are distinguished by the
        // root vertex they omit, so swapping which face carries a child is an
        // isomorphism only via the root's own symmetry
        let t1 = cx(5, &[&[0, 1, 2], &[0, 2, 3]]);
        let t2 = cx(5, &[&[0, 1, 2], &[1, 2, 4]]);
        let c1 = canonical_code(&rooted(&t1, &[0, 1]), 3).unwrap();
        let c2 = canonical_code(&rooted(&t2, &[0, 1]), 3).unwrap();
        assert_eq!(c1, c2);
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let h = canonical_code(&rooted(&hollow, &[0]), 2).unwrap();
        assert!(!h.is_tree && h.exact);
        let h2 = canonical_code(&rooted(&hollow, &[2]), 2).unwrap();
        assert_eq!(h, h2);
    }

    #[test]
    fn distances() {
        let lone = cx(1, &[&[0]]);
        let edge = cx(2, &[&[0, 1]]);
        assert_eq!(local_distance(&rooted(&lone, &[0]), &rooted(&lone, &[0])).unwrap(), 0.0);
        assert_eq!(local_distance(&rooted(&lone, &[0]), &rooted(&edge, &[0])).unwrap(), 1.0);
        // paths with 2 and 3 edges rooted at an end agree to radius 2
        let p2 = cx(3, &[&[0, 1], &[1, 2]]);
        let p3 = cx(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        assert_eq!(local_distance(&rooted(&p2, &[0]), &rooted(&p3, &[0])).unwrap(), 0.25);
    }

    #[test]
    fn local_laws() {
        let hollow = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let h = empirical_local_distribution(&hollow, 0, 1).unwrap();
        assert_eq!(h.len(), 1);
        let path = cx(3, &[&[0, 1], &[1, 2]]);
        let h = empirical_local_distribution(&path, 0, 1).unwrap();
        let mut masses: Vec<f64> = h.values().copied().collect();
        masses.sort_by(f64::total_cmp);
        assert!((masses[0] - 1.0 / 3.0).abs() < 1e-12 && (masses[1] - 2.0 / 3.0).abs() < 1e-12);
        let bare = SimplicialComplex::from_simplices(3, [[0u32], [1], [2]]).unwrap();
        assert_eq!(empirical_local_distribution(&bare, 0, 1).unwrap().len(), 1);
        let a: Histogram<&str> = [("A", 1.0)].into();
        let b: Histogram<&str> = [("A", 0.5), ("B", 0.5)].into();
        let c: Histogram<&str> = [("C", 1.0)].into();
        assert_eq!(tv_distance(&a, &a), 0.0);
        assert_eq!(tv_distance(&a, &c), 1.0);
        assert_eq!(tv_distance(&a, &b), 0.5);
        let filled = cx(3, &[&[0, 1, 2]]);
        assert_eq!(root_degree_histogram(&filled, 1).unwrap(), [(1usize, 1.0)].into());
    }
}
