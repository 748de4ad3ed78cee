//! Arithmetic in `GF(p)` for primes below `2^31`.

pub const P1: u32 = 2_147_483_647;
pub const P2: u32 = 2_147_483_629;

/// `GF(p)`. Moduli of the form `2^31 - e` with small `e` (both default
/// primes) reduce by folding the high bits instead of dividing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    /// `2^31 - p` when folding applies, else 0.
    fold: u64,
}

const M31: u64 = (1 << 31) - 1;

impl Field {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let e = (1u64 << 31).saturating_sub(p as u64);
        let fold = if p < (1 << 31) && e > 0 && e < 64 { e } else { 0 };
        Field { p: p as u64, fold }
    }

    /// `x mod p` for any `x`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        if self.fold == 0 {
            return x % self.p;
        }
        let e = self.fold;
        let x = (x >> 31) * e + (x & M31);
        let x = (x >> 31) * e + (x & M31);
        if x >= self.p {
            x - self.p
        } else {
            x
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    /// Reduces a signed accumulator with `|x| < 2^62`.
    #[inline]
    pub fn from_i64(&self, x: i64) -> u64 {
        if x >= 0 {
            self.reduce(x as u64)
        } else {
            self.neg(self.reduce(x.unsigned_abs()))
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

/// Deterministic Miller–Rabin for 32-bit inputs.
pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u32, 3, 5, 7] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let n64 = n as u64;
    let f = Field::new(n);
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n64 == 0 {
            continue;
        }
        let mut x = f.pow(a, d);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime_u32(P1));
        assert!(is_prime_u32(P2));
        assert!(!is_prime_u32(P1 - 2));
        assert!(is_prime_u32(97));
        assert!(!is_prime_u32(1));
    }

    #[test]
    fn folding_matches_division() {
        for p in [P1, P2] {
            let f = Field::new(p);
            let p = p as u64;
            for x in [0u64, 1, p - 1, p, p + 1, 2 * p, u64::MAX, (p - 1) * (p - 1), 0xdead_beef_cafe] {
                assert_eq!(f.reduce(x), x % p, "x={x}");
            }
            assert_eq!(f.from_i64(-(p as i64) * 3 - 5), (p - 5));
        }
    }

    #[test]
    fn inverses() {
        let f = Field::new(P1);
        for a in [1u64, 2, 12345, P1 as u64 - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), P1 as u64 - 1);
    }
}
