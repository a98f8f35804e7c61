// SPDX-License-Identifier: Apache-2.0

//! The bit encoding behind the identical-subgraphs fingerprint.
//!
//! Pair `t = (i, j)`, `i < j` in lexicographic order, owns bit positions
//! `[t b, (t + 1) b)` with `b = ceil(log2 W) + 1`: the first marks that the
//! edge exists, the rest hold its weight least significant bit first. A
//! string's value is `sum_l x_l 2^l`.

use num_bigint::BigUint;

use super::primes::modpow;
use crate::error::Result;
use crate::gadgets::{weight_bits, IdenticalLayout, InstanceKind, LowerBoundInstance};

/// `K = C(k, 2) (ceil(log2 W) + 1)`.
pub fn fingerprint_len(k: usize, w_bound: u64) -> usize {
    k * k.saturating_sub(1) / 2 * (weight_bits(w_bound) + 1)
}

/// `(position, bit)` for the `b` bits of pair `t`.
pub(crate) fn pair_bit_positions(
    t: usize,
    width: usize,
    weight: Option<u64>,
) -> impl Iterator<Item = (usize, bool)> {
    let base = t * (width + 1);
    let exists = weight.is_some();
    let w = weight.unwrap_or(0);
    std::iter::once((base, exists))
        .chain((0..width).map(move |h| (base + 1 + h, (w >> h) & 1 == 1)))
}

/// The two `K`-bit strings encoded by an identical-subgraphs instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentEncoding {
    pub x: Vec<bool>,
    pub y: Vec<bool>,
}

pub fn encode_pair_bits(inst: &LowerBoundInstance) -> Result<IdentEncoding> {
    inst.kind.expect(InstanceKind::Identical)?;
    let k = inst.params.k;
    let w_bound = inst.params.w_bound.unwrap_or(inst.params.w_max + 1);
    let width = weight_bits(w_bound);
    let l = IdenticalLayout { k };
    let len = fingerprint_len(k, w_bound);
    let mut x = vec![false; len];
    let mut y = vec![false; len];
    for (i, j) in l.pairs() {
        let t = l.pair_index(i, j);
        for (pos, b) in pair_bit_positions(t, width, inst.graph.weight(l.a(i), l.a(j))) {
            x[pos] = b;
        }
        for (pos, b) in pair_bit_positions(t, width, inst.graph.weight(l.b(i), l.b(j))) {
            y[pos] = b;
        }
    }
    Ok(IdentEncoding { x, y })
}

/// `sum_l bits[l] 2^l mod p`.
pub fn residue(bits: &[bool], p: u64) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (l, _)| (acc + modpow(2, l as u64, p)) % p)
}

pub fn to_biguint(bits: &[bool]) -> BigUint {
    let mut v = BigUint::ZERO;
    for (l, &b) in bits.iter().enumerate() {
        if b {
            v.set_bit(l as u64, true);
        }
    }
    v
}

/// Primes in `primes` that divide `|x - y|`.
pub fn bad_primes(x: &[bool], y: &[bool], primes: &[u64]) -> Vec<u64> {
    let (a, b) = (to_biguint(x), to_biguint(y));
    let diff = if a >= b { a - b } else { b - a };
    primes
        .iter()
        .copied()
        .filter(|&p| &diff % p == BigUint::ZERO)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_matches_small_values() {
        let bits = [true, false, true, true];
        assert_eq!(residue(&bits, 7), 13 % 7);
        assert_eq!(to_biguint(&bits), BigUint::from(13u32));
        assert_eq!(bad_primes(&bits, &[true], &[2, 3, 5, 7]), vec![2, 3]);
    }

    #[test]
    fn fingerprint_length() {
        assert_eq!(fingerprint_len(8, 256), 28 * 9);
        assert_eq!(fingerprint_len(3, 36), 3 * 7);
    }
}
