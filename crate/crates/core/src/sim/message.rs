// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// A message on one edge in one round: a plain bit vector.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Message(Vec<bool>);

impl Message {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Message(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader {
            bits: &self.0,
            pos: 0,
        }
    }
}

impl fmt::Debug for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Message(")?;
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, Default)]
pub struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bit(mut self, b: bool) -> Self {
        self.bits.push(b);
        self
    }

    /// `value` in `width` bits, most significant first.
    pub fn uint(mut self, value: u64, width: usize) -> Self {
        push_uint(&mut self.bits, value, width);
        self
    }

    pub fn bits(mut self, bits: &[bool]) -> Self {
        self.bits.extend_from_slice(bits);
        self
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn finish(self) -> Message {
        Message(self.bits)
    }
}

pub(crate) fn push_uint(bits: &mut Vec<bool>, value: u64, width: usize) {
    debug_assert!(
        width >= 64 || value >> width == 0,
        "{value} does not fit {width} bits"
    );
    bits.extend((0..width).rev().map(|h| h < 64 && (value >> h) & 1 == 1));
}

#[derive(Clone, Debug)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn over(bits: &'a [bool]) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn uint(&mut self, width: usize) -> Option<u64> {
        if self.remaining() < width {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit()? as u64;
        }
        Some(v)
    }

    pub fn rest(&mut self) -> &'a [bool] {
        let r = &self.bits[self.pos..];
        self.pos = self.bits.len();
        r
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

/// Bits needed to write any value in `0..=max` (at least one).
pub fn width_for(max: u64) -> usize {
    (64 - max.leading_zeros()).max(1) as usize
}
