// SPDX-License-Identifier: Apache-2.0

//! Two-party input strings and the reference functions DISJ and EQ.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A fixed-length string over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![true; len])
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Parses a literal such as `"0110"`.
    pub fn from_bits_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid bit character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self((0..len).map(|_| rng.random::<bool>()).collect())
    }

    /// Big-endian encoding of `value` in exactly `width` bits.
    pub fn from_uint(value: u64, width: usize) -> Self {
        Self(
            (0..width)
                .rev()
                .map(|b| b < 64 && (value >> b) & 1 == 1)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.0[i] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|b| *b)
    }

    pub fn is_all_zeros(&self) -> bool {
        self.0.iter().all(|b| !*b)
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Self(bits)
    }

    /// Splits into consecutive big-endian batches of `width` bits.
    pub fn batches(&self, width: usize) -> Result<Vec<u64>> {
        if width == 0 || width > 64 || !self.len().is_multiple_of(width) {
            return Err(Error::Parse(format!(
                "cannot split {} bits into batches of {width}",
                self.len()
            )));
        }
        Ok(self
            .0
            .chunks(width)
            .map(|c| c.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
            .collect())
    }

    pub fn from_batches(values: &[u64], width: usize) -> Self {
        Self(
            values
                .iter()
                .flat_map(|&v| Self::from_uint(v, width).0)
                .collect(),
        )
    }

    /// `"<len>:<hex>"`, bits packed most-significant first, zero padded.
    pub fn to_hex(&self) -> String {
        let mut bytes = vec![0u8; self.len().div_ceil(8)];
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                bytes[i / 8] |= 0x80 >> (i % 8);
            }
        }
        let mut hex = hex::encode(bytes);
        hex.truncate(self.len().div_ceil(4));
        format!("{}:{}", self.len(), hex)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let (len, digits) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <len>:<hex>, got {s:?}")))?;
        let len: usize = len
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad bit length {len:?}")))?;
        let digits = digits.trim().trim_start_matches("0x");
        if digits.len() != len.div_ceil(4) {
            return Err(Error::Parse(format!(
                "{len} bits need {} hex digits, got {}",
                len.div_ceil(4),
                digits.len()
            )));
        }
        let mut bits = Vec::with_capacity(digits.len() * 4);
        for c in digits.chars() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            bits.extend((0..4).rev().map(|b| (v >> b) & 1 == 1));
        }
        if bits[len..].iter().any(|b| *b) {
            return Err(Error::Parse("nonzero padding bits".into()));
        }
        bits.truncate(len);
        Ok(Self(bits))
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Accepts `0b0101`, a bare `0101`, or `<len>:<hex>`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("0b") {
            Self::from_bits_str(rest)
        } else if s.contains(':') {
            Self::from_hex(s)
        } else {
            Self::from_bits_str(s)
        }
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// A `k²`-bit string indexed by pairs `(i, j)`, row-major: bit `k·i + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndexedString {
    k: usize,
    bits: BitString,
}

impl PairIndexedString {
    pub fn new(k: usize, bits: BitString) -> Result<Self> {
        if bits.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                got: bits.len(),
            });
        }
        Ok(Self { k, bits })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(self.k * i + j)
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }
}

fn same_len(x: &BitString, y: &BitString) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(())
}

/// Set disjointness: `false` iff some index holds a 1 in both strings.
pub fn disj(x: &BitString, y: &BitString) -> Result<bool> {
    same_len(x, y)?;
    Ok(!x.0.iter().zip(&y.0).any(|(a, b)| *a && *b))
}

pub fn eq(x: &BitString, y: &BitString) -> Result<bool> {
    same_len(x, y)?;
    Ok(x == y)
}

/// DISJ inputs must not be all-ones, which would disconnect the gadgets.
pub fn validate_disj_input(x: &BitString, y: &BitString) -> bool {
    !x.is_all_ones() && !y.is_all_ones()
}

/// The two-party function a lower-bound family reduces from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommFunction {
    Disj,
    Eq,
}

impl CommFunction {
    pub fn eval(self, x: &BitString, y: &BitString) -> Result<bool> {
        match self {
            CommFunction::Disj => disj(x, y),
            CommFunction::Eq => eq(x, y),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> BitString {
        BitString::from_bits_str(s).unwrap()
    }

    #[test]
    fn disj_examples() {
        assert!(disj(&b("0000"), &b("1111")).unwrap());
        assert!(!disj(&b("0100"), &b("0110")).unwrap());
        assert!(matches!(
            disj(&b("01"), &b("011")),
            Err(Error::LengthMismatch {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn eq_examples() {
        assert!(eq(&b("1010"), &b("1010")).unwrap());
        assert!(!eq(&b("1010"), &b("1011")).unwrap());
        assert!(eq(&b("1"), &b("10")).is_err());
    }

    #[test]
    fn validation_excludes_all_ones() {
        assert!(!validate_disj_input(&b("111"), &b("000")));
        assert!(validate_disj_input(&b("110"), &b("011")));
        assert!(validate_disj_input(&b("0"), &b("0")));
    }

    #[test]
    fn hex_format() {
        assert_eq!(b("0100").to_hex(), "4:4");
        assert_eq!(b("101").to_hex(), "3:a");
        assert_eq!(b("").to_hex(), "0:");
        assert_eq!(
            BitString::from_hex("16:a5f0").unwrap(),
            b("1010010111110000")
        );
        assert!(BitString::from_hex("3:f").is_err());
        assert!(BitString::from_hex("8:f").is_err());
        assert_eq!("0b0110".parse::<BitString>().unwrap(), b("0110"));
    }

    #[test]
    fn batches_are_big_endian() {
        assert_eq!(b("0110").batches(2).unwrap(), vec![1, 2]);
        assert_eq!(BitString::from_batches(&[1, 2], 2), b("0110"));
        assert!(b("011").batches(2).is_err());
    }

    #[test]
    fn pair_indexing_is_row_major() {
        let p = PairIndexedString::new(2, b("0010")).unwrap();
        assert!(p.get(1, 0));
        assert!(!p.get(0, 1));
        assert!(PairIndexedString::new(3, b("0010")).is_err());
    }

    fn pair(len: usize) -> impl Strategy<Value = (BitString, BitString)> {
        (
            prop::collection::vec(any::<bool>(), len),
            prop::collection::vec(any::<bool>(), len),
        )
            .prop_map(|(x, y)| (BitString(x), BitString(y)))
    }

    proptest! {
        #[test]
        fn disj_matches_and_scan((x, y) in pair(16)) {
            let xv = x.batches(16).unwrap()[0];
            let yv = y.batches(16).unwrap()[0];
            prop_assert_eq!(disj(&x, &y).unwrap(), xv & yv == 0);
            prop_assert_eq!(disj(&x, &y).unwrap(), disj(&y, &x).unwrap());
            prop_assert!(disj(&x, &BitString::zeros(16)).unwrap());
        }

        #[test]
        fn eq_matches_positionwise((x, y) in pair(12)) {
            let positionwise = (0..12).all(|i| x.get(i) == y.get(i));
            prop_assert_eq!(eq(&x, &y).unwrap(), positionwise);
            prop_assert_eq!(eq(&x, &y).unwrap(), eq(&y, &x).unwrap());
        }

        #[test]
        fn hex_round_trip(bits in prop::collection::vec(any::<bool>(), 0..70)) {
            let s = BitString(bits);
            prop_assert_eq!(BitString::from_hex(&s.to_hex()).unwrap(), s);
        }
    }
}
