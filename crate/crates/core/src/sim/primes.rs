// SPDX-License-Identifier: Apache-2.0

//! Prime tables and modular arithmetic for fingerprints.

const SEGMENT: usize = 1 << 15;

/// The first `count` primes, by a segmented sieve of Eratosthenes.
///
/// The sieve limit is `n (ln n + ln ln n)`, an upper bound on the `n`-th
/// prime for `n >= 6`.
pub fn nth_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let c = count as f64;
    let mut limit = if count < 6 {
        15
    } else {
        (c * (c.ln() + c.ln().ln())).ceil() as usize + 1
    };
    loop {
        let primes = primes_up_to(limit, count);
        if primes.len() >= count {
            return primes;
        }
        limit *= 2;
    }
}

/// Primes `<= limit`, stopping after `cap` of them.
fn primes_up_to(limit: usize, cap: usize) -> Vec<u64> {
    let root = (limit as f64).sqrt() as usize + 1;
    let mut small = vec![true; root + 1];
    let mut base = Vec::new();
    for i in 2..=root {
        if small[i] {
            base.push(i);
            let mut m = i * i;
            while m <= root {
                small[m] = false;
                m += i;
            }
        }
    }
    let mut out = Vec::with_capacity(cap);
    let mut seg = vec![true; SEGMENT];
    let mut lo = 2;
    while lo <= limit && out.len() < cap {
        let hi = (lo + SEGMENT - 1).min(limit);
        seg[..=hi - lo].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                seg[m - lo] = false;
                m += p;
            }
        }
        for (off, &is_prime) in seg[..=hi - lo].iter().enumerate() {
            if is_prime {
                out.push((lo + off) as u64);
                if out.len() == cap {
                    break;
                }
            }
        }
        lo = hi + 1;
    }
    out
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square and multiply.
pub fn modpow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, b, m);
        }
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    result
}
