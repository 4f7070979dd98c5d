//! Certified rank of power-Gram matrices `G[i][j] = (v_i . v_j)^k`.
//!
//! `G` is the Gram matrix of the symmetric tensors `v_i^{(x)k}` under the
//! standard inner product, so it is positive semidefinite and its rank equals
//! the dimension spanned by those tensors. Two facts make a multimodular
//! computation exact:
//!
//! * reduction modulo a prime can only lower the rank, so `max_p rank_p(G)`
//!   is a lower bound;
//! * for a PSD matrix the rank is the size of the largest nonsingular
//!   principal minor, and Hadamard bounds a principal minor by the product of
//!   its diagonal entries. Once the primes seen so far multiply to more than
//!   that bound for minors of size `r + 1`, every such minor is divisible by
//!   a number larger than its absolute value and therefore vanishes.

use num_bigint::BigInt;
use num_traits::Zero;

use super::modp::{descending_primes, rank_in_place, PrimeField, BITS_PER_PRIME};

fn gram_rank_mod(field: &PrimeField, vectors: &[Vec<BigInt>], power: u32) -> usize {
    let d = vectors.len();
    let reduced: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| field.from_bigint(x)).collect())
        .collect();
    let mut g = vec![0u64; d * d];
    for i in 0..d {
        for j in i..d {
            let dot = reduced[i]
                .iter()
                .zip(&reduced[j])
                .fold(0u64, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
            let e = field.pow(dot, power as u64);
            g[i * d + j] = e;
            g[j * d + i] = e;
        }
    }
    rank_in_place(field, &mut g, d, d)
}

/// Bits needed so that a product of primes certifies every principal minor
/// of size `size` to be zero.
fn hadamard_bits(norm_bits: &[u64], size: usize, power: u32) -> u64 {
    norm_bits.iter().take(size).sum::<u64>() * power as u64 + 1
}

#[cfg(feature = "parallel")]
fn ranks_for(primes: &[u64], vectors: &[Vec<BigInt>], power: u32) -> Vec<usize> {
    use rayon::prelude::*;
    primes
        .par_iter()
        .map(|&p| gram_rank_mod(&PrimeField::new(p), vectors, power))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn ranks_for(primes: &[u64], vectors: &[Vec<BigInt>], power: u32) -> Vec<usize> {
    primes
        .iter()
        .map(|&p| gram_rank_mod(&PrimeField::new(p), vectors, power))
        .collect()
}

/// Exact rank of `[(v_i . v_j)^power]` over the rationals.
///
/// `upper` must be a proven upper bound on the rank (for example the number
/// of vectors); reaching it ends the computation early.
pub fn certified_gram_rank(vectors: &[Vec<BigInt>], power: u32, upper: usize) -> usize {
    let d = vectors.len();
    let upper = upper.min(d);
    if d == 0 || upper == 0 {
        return 0;
    }
    if power == 0 {
        return 1;
    }
    // Bit lengths of |v_i|^2 sorted descending.
    let mut norm_bits: Vec<u64> = vectors
        .iter()
        .map(|v| {
            let n2 = v.iter().fold(BigInt::zero(), |acc, x| acc + x * x);
            n2.bits()
        })
        .collect();
    norm_bits.sort_unstable_by(|a, b| b.cmp(a));

    let mut primes = descending_primes();
    let first = primes.next().expect("prime supply");
    let mut best = gram_rank_mod(&PrimeField::new(first), vectors, power);
    let mut covered_bits = BITS_PER_PRIME;
    if best >= upper {
        return upper;
    }
    let batch = 8;
    loop {
        let needed = hadamard_bits(&norm_bits, best + 1, power);
        if covered_bits >= needed {
            return best;
        }
        let remaining = needed - covered_bits;
        let count = (remaining.div_ceil(BITS_PER_PRIME) as usize).min(batch).max(1);
        let chunk: Vec<u64> = primes.by_ref().take(count).collect();
        assert_eq!(chunk.len(), count, "ran out of 62-bit primes");
        for r in ranks_for(&chunk, vectors, power) {
            best = best.max(r);
        }
        covered_bits += BITS_PER_PRIME * count as u64;
        if best >= upper {
            return upper;
        }
    }
}
