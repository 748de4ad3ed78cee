//! Small combinatorial helpers: binomials, lexicographic ranking of
//! k-subsets, and subset enumeration.

/// `C(n, k)` in `u64`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `C(n, k)` as a float; `C(d, d+1) = 0` by convention.
pub fn binomial_f64(n: i64, k: i64) -> f64 {
    if k < 0 || n < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

pub fn factorial_f64(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Calls `f` on every `r`-subset of `items` in lexicographic order of
/// positions.
pub fn for_each_combination<T: Copy>(items: &[T], r: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..r {
            buf[j] = items[idx[j]];
        }
    }
}

/// Lexicographic ranking of the `r`-subsets of `{0, .., m-1}`.
///
/// Used to jump over runs of rejected candidates when the candidate set is
/// "all subsets of a vertex list".
#[derive(Clone, Debug)]
pub struct SubsetRanker {
    m: u64,
    r: u64,
    total: u64,
}

impl SubsetRanker {
    pub fn new(m: usize, r: usize) -> Self {
        let total = binomial(m as u64, r as u64);
        SubsetRanker { m: m as u64, r: r as u64, total }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Writes the subset of lexicographic rank `rank` into `out`.
    pub fn unrank(&self, mut rank: u64, out: &mut Vec<u32>) {
        debug_assert!(rank < self.total);
        out.clear();
        let mut offset = 0u64;
        let mut m = self.m;
        for slot in 0..self.r {
            let r = self.r - slot;
            // subsets of {0..m-1} whose first element is < x: C(m,r) - C(m-x,r)
            let all = binomial(m, r);
            let (mut lo, mut hi) = (0u64, m - r);
            while lo < hi {
                let mid = (lo + hi + 1) / 2;
                if all - binomial(m - mid, r) <= rank {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            let x = lo;
            rank -= all - binomial(m - x, r);
            out.push((offset + x) as u32);
            offset += x + 1;
            m -= x + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3000, 3), 4_495_501_000);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial_f64(2, 3), 0.0);
        assert_eq!(binomial_f64(0, 0), 1.0);
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(&[1u32, 2, 3, 4], 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let mut count = 0;
        for_each_combination(&[7u32], 0, |c| {
            assert!(c.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn unrank_matches_enumeration() {
        let items: Vec<u32> = (0..7).collect();
        for r in 1..=4 {
            let ranker = SubsetRanker::new(7, r);
            let mut all = Vec::new();
            for_each_combination(&items, r, |c| all.push(c.to_vec()));
            assert_eq!(all.len() as u64, ranker.total());
            let mut buf = Vec::new();
            for (i, c) in all.iter().enumerate() {
                ranker.unrank(i as u64, &mut buf);
                assert_eq!(&buf, c);
            }
        }
    }
}
