//! Bit strings and the bit-level codecs everything else is built on.
//!
//! Three conventions are fixed here once and shared by every module:
//!
//! * **Length-lex order**: binary strings ordered by length, then
//!   lexicographically with `0 < 1`. Rank 0 is the empty string, rank 1 is
//!   `"0"`, rank 2 is `"1"`, rank 3 is `"00"`, and so on. This is the
//!   canonical bijection between naturals and strings; "instance rank" and
//!   "machine index" always mean a position in this order.
//! * **Elias gamma codes**: a value `v >= 1` is written as `bitlen(v) - 1`
//!   zeros followed by `v` in binary, most significant bit first.
//! * **Cantor pairing**: the standard bijection `N x N -> N`,
//!   `pair(i, j) = (i + j)(i + j + 1)/2 + j`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Roots;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An immutable-by-convention sequence of bits.
///
/// Displayed and serialized as text of `0`/`1` characters so logs stay
/// unambiguous across platforms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<bool> {
        self.0.get(idx).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// All-zero string of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    /// All-one string of the given length.
    pub fn ones(len: usize) -> Self {
        BitString(vec![true; len])
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bits\"{self}\"")
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParseBitsError(pub char);

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bit strings may only contain 0 and 1, found {:?}", self.0)
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(ParseBitsError(other)),
            }
        }
        Ok(BitString(bits))
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cursor over a [`BitString`]; all decoders consume bits through this.
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl BitReader<'_> {
    pub fn next_bit(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos);
        if bit.is_some() {
            self.pos += 1;
        }
        bit
    }

    pub fn exhausted(&self) -> bool {
        self.pos >= self.bits.len()
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}

/// String at the given length-lex rank.
pub fn rank_to_bits(rank: &BigUint) -> BitString {
    // rank + 1 written in binary is "1" followed by exactly the string.
    let digits = (rank + 1u32).to_radix_be(2);
    BitString(digits[1..].iter().map(|&d| d == 1).collect())
}

/// Length-lex rank of the given string.
pub fn bits_to_rank(bits: &BitString) -> BigUint {
    let mut digits = Vec::with_capacity(bits.len() + 1);
    digits.push(1u8);
    digits.extend(bits.iter().map(u8::from));
    BigUint::from_radix_be(&digits, 2).expect("digits are binary") - 1u32
}

/// [`rank_to_bits`] for ranks that fit in a machine word.
pub fn rank_to_bits_u64(rank: u64) -> BitString {
    let v = rank as u128 + 1;
    let len = (127 - v.leading_zeros()) as usize;
    let mut bits = Vec::with_capacity(len);
    for i in (0..len).rev() {
        bits.push((v >> i) & 1 == 1);
    }
    BitString(bits)
}

/// Length-lex rank as a `u64`, or `None` when the string is too long.
pub fn bits_to_rank_u64(bits: &BitString) -> Option<u64> {
    if bits.len() > 63 {
        return None;
    }
    let mut v: u64 = 1;
    for b in bits.iter() {
        v = (v << 1) | b as u64;
    }
    Some(v - 1)
}

/// Appends the Elias gamma code of `value` (which must be >= 1).
pub fn gamma_append(out: &mut BitString, value: u64) {
    assert!(value >= 1, "gamma codes do not handle 0");
    let len = 64 - value.leading_zeros() as usize;
    for _ in 0..len - 1 {
        out.push(false);
    }
    for i in (0..len).rev() {
        out.push((value >> i) & 1 == 1);
    }
}

/// Reads one Elias gamma code.
///
/// Returns `None` when the bits run out mid-code. Values that do not fit in
/// a `u64` saturate to `u64::MAX`; such codes need payloads past 64 bits and
/// are unreachable from any index this crate materializes.
pub fn gamma_read(r: &mut BitReader<'_>) -> Option<u64> {
    let mut zeros = 0usize;
    loop {
        match r.next_bit()? {
            false => zeros += 1,
            true => break,
        }
    }
    let mut value: u64 = 1;
    for _ in 0..zeros {
        let bit = r.next_bit()?;
        value = value.saturating_mul(2).saturating_add(bit as u64);
    }
    Some(value)
}

/// Cantor pairing; `None` when the result does not fit in a `u64`.
pub fn cantor_pair(i: u64, j: u64) -> Option<u64> {
    let w = i as u128 + j as u128;
    let z = w * (w + 1) / 2 + j as u128;
    u64::try_from(z).ok()
}

/// Inverse of [`cantor_pair`]; total on `u64`.
pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    let mut w = ((8 * z + 1).sqrt() - 1) / 2;
    // Integer sqrt can land one off at triangular-number boundaries.
    if (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let t = w * (w + 1) / 2;
    let j = z - t;
    let i = w - j;
    (i as u64, j as u64)
}
