//! Bit-addressed buffers with a fixed bit order.
//!
//! All multi-bit fields are written most-significant bit first, and bits fill
//! each byte from its most-significant position down. Unused trailing bits of
//! the last byte are kept at zero so that equal contents hash and compare
//! equal.

use crate::error::{Error, Result};
use std::fmt;

/// Growable bitstring, MSB-first within each byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses a string of '0'/'1' characters. Intended for tests and the
    /// machine file format.
    pub fn from_str01(s: &str) -> Result<Self> {
        let mut b = Self::new();
        for ch in s.chars() {
            match ch {
                '0' => b.push_bit(false),
                '1' => b.push_bit(true),
                _ => return Err(Error::Format(format!("invalid bit character '{ch}'"))),
            }
        }
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push_bit(&mut self, bit: bool) {
        let pos = self.len % 8;
        if pos == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 1 << (7 - pos);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    /// `width` may be 0 (no-op) and at most 64.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        assert!(width <= 64);
        for i in (0..width).rev() {
            self.push_bit((value >> i) & 1 == 1);
        }
    }

    pub fn push_bitstring(&mut self, other: &BitString) {
        for i in 0..other.len {
            self.push_bit(other.get(i));
        }
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bytes[i / 8] >> (7 - i % 8)) & 1 == 1
    }

    /// Backing bytes, last byte zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader::new(&self.bytes, self.len)
    }

    /// True when `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        if self.len > other.len {
            return false;
        }
        (0..self.len).all(|i| self.get(i) == other.get(i))
    }

    /// The tail of `other` after removing `self` as a prefix.
    pub fn strip_prefix_from<'a>(&self, other: &'a BitString) -> Option<BitString> {
        if !self.is_prefix_of(other) {
            return None;
        }
        let mut out = BitString::new();
        for i in self.len..other.len {
            out.push_bit(other.get(i));
        }
        Some(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Cursor over a byte slice interpreted as a bitstring.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    len: usize,
    pos: usize,
}

impl<'a> BitReader<'a> {
    /// Reads up to `len_bits` bits out of `bytes`.
    pub fn new(bytes: &'a [u8], len_bits: usize) -> Self {
        assert!(len_bits <= bytes.len() * 8);
        Self { bytes, len: len_bits, pos: 0 }
    }

    /// Treats the whole slice as bits (len = 8 * bytes).
    pub fn over_bytes(bytes: &'a [u8]) -> Self {
        Self { bytes, len: bytes.len() * 8, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.len - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.len {
            return Err(Error::Format("bitstream exhausted".into()));
        }
        let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1 == 1;
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `width` bits (0..=64), most significant first.
    pub fn read_bits(&mut self, width: usize) -> Result<u64> {
        assert!(width <= 64);
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }
}

/// Number of bits needed to index `n` distinct values: ceil(log2 n), with 0
/// for n <= 1.
pub fn ceil_log2(n: u64) -> usize {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_get_round_trip() {
        let mut b = BitString::new();
        b.push_bits(0b1011, 4);
        b.push_bit(true);
        assert_eq!(b.len(), 5);
        assert_eq!(b.to_string(), "10111");
        assert_eq!(b.as_bytes(), &[0b1011_1000]);
        let mut r = b.reader();
        assert_eq!(r.read_bits(5).unwrap(), 0b10111);
        assert!(r.read_bit().is_err());
    }

    #[test]
    fn zero_width_fields() {
        let mut b = BitString::new();
        b.push_bits(123, 0);
        assert!(b.is_empty());
        let mut r = b.reader();
        assert_eq!(r.read_bits(0).unwrap(), 0);
    }

    #[test]
    fn padding_bits_stay_zero() {
        let a = BitString::from_str01("101").unwrap();
        let mut b = BitString::new();
        b.push_bit(true);
        b.push_bit(false);
        b.push_bit(true);
        assert_eq!(a, b);
        assert_eq!(a.as_bytes(), b.as_bytes());
    }

    #[test]
    fn prefix_ops() {
        let a = BitString::from_str01("10").unwrap();
        let b = BitString::from_str01("1011").unwrap();
        assert!(a.is_prefix_of(&b));
        assert!(!b.is_prefix_of(&a));
        assert_eq!(a.strip_prefix_from(&b).unwrap().to_string(), "11");
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 40), 40);
    }
}
