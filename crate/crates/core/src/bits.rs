//! Arbitrary-length bit strings and a small bit-level codec.
//!
//! Labels, certificates and every wire encoding in this crate are
//! [`BitString`]s. Equality is bit-exact: the empty string and a string of
//! eight zero bits are different values.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a string of `0`/`1` characters. `""` and `"ε"` are the empty string.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(Self::new());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    /// `value` written most-significant bit first in exactly `width` bits.
    pub fn from_uint(value: u64, width: usize) -> Self {
        let mut w = BitWriter::new();
        w.write_uint(value, width);
        w.finish()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// First `len` bits (or the whole string when shorter).
    pub fn prefix(&self, len: usize) -> BitString {
        Self::from_bits(self.bits[..len.min(self.bits.len())].to_vec())
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        Self::from_bits(self.bits[start..end].to_vec())
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitString>) -> BitString {
        let mut out = BitString::new();
        for p in parts {
            out.extend_from(p);
        }
        out
    }

    /// Copy with bit `i` inverted.
    pub fn flipped(&self, i: usize) -> BitString {
        let mut out = self.clone();
        out.bits[i] = !out.bits[i];
        out
    }

    /// Interprets the whole string as an unsigned integer, MSB first.
    pub fn to_uint(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    /// Bits packed MSB-first into bytes, hex encoded. The trailing pad bits of
    /// the last byte are zero.
    pub fn to_hex(&self) -> String {
        let mut bytes = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                bytes[i / 8] |= 0x80 >> (i % 8);
            }
        }
        hex::encode(bytes)
    }

    /// Inverse of [`to_hex`](Self::to_hex). The hex string must hold exactly
    /// `ceil(bits / 8)` bytes and the pad bits must be zero.
    pub fn from_hex(s: &str, bits: usize) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad hex {s:?}: {e}")))?;
        if bytes.len() != bits.div_ceil(8) {
            return Err(Error::Parse(format!(
                "hex {s:?} holds {} bytes, expected {} for {bits} bits",
                bytes.len(),
                bits.div_ceil(8)
            )));
        }
        let out: Vec<bool> = (0..bytes.len() * 8).map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0).collect();
        if out[bits..].iter().any(|&b| b) {
            return Err(Error::Parse(format!("hex {s:?} has nonzero pad bits beyond {bits}")));
        }
        Ok(Self::from_bits(out[..bits].to_vec()))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl serde::Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        s.serialize_str(&text)
    }
}

impl<'de> serde::Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        BitString::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bits(iter.into_iter().collect())
    }
}

/// Number of bits needed to write any value in `0..=n`, i.e. `ceil(log2(n + 1))`.
pub fn idbits(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Length of the Elias-gamma code that [`BitWriter::write_gamma`] emits for `x`.
pub fn gamma_len(x: usize) -> usize {
    2 * (idbits(x + 1) - 1) + 1
}

/// All bit strings of length `0..=max_len`: shorter first, lexicographic
/// within a length. There are `2^(max_len + 1) - 1` of them.
pub fn all_strings_up_to(max_len: usize) -> impl Iterator<Item = BitString> {
    (0..=max_len).flat_map(|len| (0u64..(1u64 << len)).map(move |v| BitString::from_uint(v, len)))
}

/// Number of strings [`all_strings_up_to`] yields, saturating.
pub fn count_strings_up_to(max_len: usize) -> u64 {
    if max_len >= 63 {
        u64::MAX
    } else {
        (1u64 << (max_len + 1)) - 1
    }
}

#[derive(Debug, Default)]
pub struct BitWriter {
    out: BitString,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.out.push(bit);
    }

    pub fn write_uint(&mut self, value: u64, width: usize) {
        debug_assert!(width >= 64 || value >> width == 0, "{value} does not fit in {width} bits");
        for i in (0..width).rev() {
            self.out.push(i < 64 && (value >> i) & 1 == 1);
        }
    }

    /// Elias-gamma code of `x + 1`, so zero is encodable.
    pub fn write_gamma(&mut self, x: usize) {
        let v = x as u64 + 1;
        let width = idbits(v as usize);
        for _ in 1..width {
            self.out.push(false);
        }
        self.write_uint(v, width);
    }

    pub fn write_bits(&mut self, bits: &BitString) {
        self.out.extend_from(bits);
    }

    /// Length prefix followed by the bits.
    pub fn write_string(&mut self, bits: &BitString) {
        self.write_gamma(bits.len());
        self.write_bits(bits);
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn finish(self) -> BitString {
        self.out
    }
}

/// Cursor over a [`BitString`]. Every read returns `None` instead of running
/// past the end, so decoders built on it cannot panic on hostile input.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        Self { bits: bits.as_slice(), pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.bits.len()
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn read_uint(&mut self, width: usize) -> Option<u64> {
        if width > 64 || width > self.remaining() {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Some(v)
    }

    pub fn read_gamma(&mut self) -> Option<usize> {
        let mut zeros = 0;
        while !self.read_bit()? {
            zeros += 1;
            if zeros >= 63 {
                return None;
            }
        }
        let rest = self.read_uint(zeros)?;
        let v = (1u64 << zeros) | rest;
        usize::try_from(v - 1).ok()
    }

    pub fn read_bits(&mut self, len: usize) -> Option<BitString> {
        if len > self.remaining() {
            return None;
        }
        let out = BitString::from_bits(self.bits[self.pos..self.pos + len].to_vec());
        self.pos += len;
        Some(out)
    }

    pub fn read_string(&mut self) -> Option<BitString> {
        let len = self.read_gamma()?;
        self.read_bits(len)
    }

    pub fn read_rest(&mut self) -> BitString {
        let out = BitString::from_bits(self.bits[self.pos..].to_vec());
        self.pos = self.bits.len();
        out
    }
}
