//! Integer polynomial products by Kronecker substitution.
//!
//! Both operands are packed into a single big integer by evaluating at
//! `2^K`, multiplied with the big-integer multiplier (Karatsuba/Toom), and
//! unpacked with a balanced digit decoding. `K` is chosen so that every
//! product coefficient fits in `K - 1` bits plus sign.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

const SCHOOLBOOK_MAX: usize = 12;

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_MAX {
        return schoolbook(a, b);
    }
    kronecker(a, b)
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    let k_bits = max_bits(a) + max_bits(b) + len_bits + 2;
    let words = k_bits.div_ceil(32) as usize;
    let pa = pack(a, words);
    let pb = pack(b, words);
    unpack(&(pa * pb), a.len() + b.len() - 1, words)
}

fn pack(v: &[BigInt], words: usize) -> BigInt {
    let mut pos = vec![0u32; v.len() * words];
    let mut neg = vec![0u32; v.len() * words];
    for (i, c) in v.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let dst = match sign {
            Sign::Minus => &mut neg,
            Sign::Plus => &mut pos,
            Sign::NoSign => continue,
        };
        dst[i * words..i * words + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

fn unpack(value: &BigInt, count: usize, words: usize) -> Vec<BigInt> {
    let mut offset = vec![0u32; count * words];
    for i in 0..count {
        offset[i * words + words - 1] = 1 << 31;
    }
    let half = BigInt::from(BigUint::new(offset[..words].to_vec()));
    let shifted = value + BigInt::from(BigUint::new(offset));
    let (sign, mut digits) = shifted.to_u32_digits();
    debug_assert!(sign != Sign::Minus);
    digits.resize(count * words, 0);
    digits
        .chunks(words)
        .map(|chunk| BigInt::from(BigUint::from_slice(chunk)) - &half)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_schoolbook_on_random_signed_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let la = rng.gen_range(13..60);
            let lb = rng.gen_range(13..60);
            let gen = |rng: &mut ChaCha8Rng, l: usize| -> Vec<BigInt> {
                (0..l)
                    .map(|_| {
                        let bits = rng.gen_range(1..200u32);
                        let mut x = BigInt::from(rng.gen::<u64>());
                        x <<= bits;
                        x += rng.gen::<u32>();
                        if rng.gen_bool(0.5) {
                            -x
                        } else if rng.gen_bool(0.1) {
                            BigInt::zero()
                        } else {
                            x
                        }
                    })
                    .collect()
            };
            let a = gen(&mut rng, la);
            let b = gen(&mut rng, lb);
            assert_eq!(kronecker(&a, &b), schoolbook(&a, &b));
        }
    }
}
