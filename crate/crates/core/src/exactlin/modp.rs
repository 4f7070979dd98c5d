//! Prime-field arithmetic used to prefilter exact computations.
//!
//! Elements are kept in Montgomery form so that the hot elimination loops
//! only use 64x64->128 multiplies. A rank computed modulo a prime never
//! exceeds the rank of the integer matrix it was reduced from, which is what
//! makes every shortcut built on top of this module exact.

use num_bigint::{BigInt, Sign};
use rand::Rng;

/// Largest prime below 2^62; the default prefilter modulus.
pub const PREFILTER_PRIME: u64 = 4_611_686_018_427_387_847;

/// Arithmetic modulo an odd prime `p < 2^63`, Montgomery representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    neg_pinv: u64,
    r2: u64,
    one: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1u64 << 63) && p > 2, "modulus must be an odd prime below 2^63");
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        PrimeField {
            p,
            neg_pinv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn zero(&self) -> u64 {
        0
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.one
    }

    /// Converts a canonical residue `a < p` into Montgomery form.
    #[inline]
    pub fn enter(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    /// Converts back to a canonical residue.
    #[inline]
    pub fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
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

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128) as u64;
        self.enter(r)
    }

    /// Reduces an arbitrary integer into Montgomery form.
    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for digit in x.magnitude().iter_u64_digits().rev() {
            acc = ((acc << 64) | digit as u128) % p;
        }
        let r = self.enter(acc as u64);
        if x.sign() == Sign::Minus {
            self.neg(r)
        } else {
            r
        }
    }
}

/// Rank of a dense row-major matrix whose entries are already in the
/// Montgomery form of `field`. The matrix is destroyed.
pub fn rank_in_place(field: &PrimeField, mat: &mut [u64], rows: usize, cols: usize) -> usize {
    debug_assert_eq!(mat.len(), rows * cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| mat[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in c..cols {
                mat.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(mat[rank * cols + c]).expect("nonzero pivot");
        for j in c..cols {
            mat[rank * cols + j] = field.mul(mat[rank * cols + j], inv);
        }
        let (head, tail) = mat.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = field.sub(row[j], field.mul(f, pivot_row[j]));
            }
        }
        rank += 1;
    }
    rank
}

/// Rank modulo `field.modulus()` of an integer matrix given by rows.
pub fn rank_mod_prime(field: &PrimeField, rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut flat: Vec<u64> = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        debug_assert_eq!(row.len(), cols);
        flat.extend(row.iter().map(|x| field.from_bigint(x)));
    }
    rank_in_place(field, &mut flat, rows.len(), cols)
}

/// Solves the square system `a x = b` modulo the prime; `None` when `a` is
/// singular modulo the prime. Entries are in Montgomery form.
pub fn solve_in_place(field: &PrimeField, a: &mut [u64], b: &mut [u64], n: usize) -> Option<()> {
    for c in 0..n {
        let pivot = (c..n).find(|&r| a[r * n + c] != 0)?;
        if pivot != c {
            for j in 0..n {
                a.swap(pivot * n + j, c * n + j);
            }
            b.swap(pivot, c);
        }
        let inv = field.inv(a[c * n + c])?;
        for j in 0..n {
            a[c * n + j] = field.mul(a[c * n + j], inv);
        }
        b[c] = field.mul(b[c], inv);
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = a[r * n + c];
            if f == 0 {
                continue;
            }
            for j in 0..n {
                a[r * n + j] = field.sub(a[r * n + j], field.mul(f, a[c * n + j]));
            }
            b[r] = field.sub(b[r], field.mul(f, b[c]));
        }
    }
    Some(())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in decreasing order starting below `2^62`. Every yielded prime
/// exceeds `2^61`, so each contributes at least 61 bits to a CRT modulus.
pub fn descending_primes() -> impl Iterator<Item = u64> {
    let mut candidate = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while candidate > (1u64 << 61) {
            let c = candidate;
            candidate -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    })
}

/// Bits guaranteed per prime from [`descending_primes`].
pub const BITS_PER_PRIME: u64 = 61;

/// A uniformly drawn prime in `[lo, hi)`; both bounds must be below 2^63.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    assert!(lo < hi && hi <= (1u64 << 63));
    loop {
        let c = rng.gen_range(lo..hi) | 1;
        if c < hi && is_prime_u64(c) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip_and_inverse() {
        let f = PrimeField::new(PREFILTER_PRIME);
        for v in [0u64, 1, 2, 12345, PREFILTER_PRIME - 1] {
            assert_eq!(f.leave(f.enter(v)), v);
        }
        let a = f.enter(987_654_321);
        let inv = f.inv(a).unwrap();
        assert_eq!(f.leave(f.mul(a, inv)), 1);
        assert_eq!(f.leave(f.from_bigint(&BigInt::from(-1))), PREFILTER_PRIME - 1);
    }

    #[test]
    fn prime_constant_is_prime() {
        assert!(is_prime_u64(PREFILTER_PRIME));
        assert!(!is_prime_u64(PREFILTER_PRIME + 2) || PREFILTER_PRIME + 2 >= (1 << 62));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        let first = descending_primes().next().unwrap();
        assert_eq!(first, PREFILTER_PRIME);
    }

    #[test]
    fn big_reduction_matches_naive() {
        let f = PrimeField::new(1_000_000_007);
        let x: BigInt = BigInt::from(10).pow(40) + 17;
        let expect = (&x % BigInt::from(1_000_000_007u64)).to_string().parse::<u64>().unwrap();
        assert_eq!(f.leave(f.from_bigint(&x)), expect);
    }
}
