//! Self-delimiting classical prefixes.
//!
//! A positive integer k is encoded as floor(log2 k) ones, one zero, then the
//! floor(log2 k) + 1 binary digits of k: total length 2 floor(log2 k) + 2.
//! Rationals are encoded as the numerator and denominator prefixes
//! concatenated; everything decodes left to right without lookahead.

use crate::exact::rational::{floor_log2_u64, Rat};
use crate::{Error, Result};
use num_traits::Signed;

/// Bit string with explicit length, packable into bytes (big-endian within
/// each byte, zero-padded at the end).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
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

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, b) in self.bits.iter().enumerate() {
            if *b {
                out[i / 8] |= 1 << (7 - i % 8);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], bit_len: usize) -> Result<Self> {
        if bit_len > bytes.len() * 8 {
            return Err(Error::Malformed("bit length exceeds byte buffer".into()));
        }
        let bits = (0..bit_len)
            .map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1)
            .collect();
        Ok(Self { bits })
    }

    pub fn to_01_string(&self) -> String {
        self.bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }
}

/// Prefix length of k: 2 floor(log2 k) + 2.
pub fn encoded_len_k(k: u64) -> usize {
    assert!(k >= 1);
    2 * floor_log2_u64(k) as usize + 2
}

/// Encodes k >= 1 as 1^floor(log2 k) 0 binary(k).
pub fn encode_k(k: u64) -> Result<BitString> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let lg = floor_log2_u64(k);
    let mut out = BitString::new();
    for _ in 0..lg {
        out.push(true);
    }
    out.push(false);
    for i in (0..=lg).rev() {
        out.push(k >> i & 1 == 1);
    }
    Ok(out)
}

/// Decodes one k-prefix starting at `pos`; returns (k, next position).
pub fn decode_k(bits: &BitString, pos: usize) -> Result<(u64, usize)> {
    let mut p = pos;
    let mut ones = 0usize;
    loop {
        match bits.get(p) {
            Some(true) => {
                ones += 1;
                p += 1;
                if ones > 63 {
                    return Err(Error::Malformed("k prefix too long".into()));
                }
            }
            Some(false) => {
                p += 1;
                break;
            }
            None => return Err(Error::Malformed("truncated k prefix".into())),
        }
    }
    let mut k = 0u64;
    for _ in 0..=ones {
        match bits.get(p) {
            Some(b) => {
                k = k << 1 | b as u64;
                p += 1;
            }
            None => return Err(Error::Malformed("truncated k digits".into())),
        }
    }
    if k >> ones != 1 {
        return Err(Error::Malformed("k digits lost leading 1".into()));
    }
    Ok((k, p))
}

/// Descriptor length c for a positive rational.
pub fn encoded_len_rational(r: &Rat) -> Result<usize> {
    let (num, den) = rational_parts(r)?;
    Ok(encoded_len_k(num) + encoded_len_k(den))
}

fn rational_parts(r: &Rat) -> Result<(u64, u64)> {
    if !r.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "descriptor requires a positive rational, got {r}"
        )));
    }
    let num = u64::try_from(r.numer().magnitude())
        .map_err(|_| Error::InvalidParameter("rational numerator too large".into()))?;
    let den = u64::try_from(r.denom().magnitude())
        .map_err(|_| Error::InvalidParameter("rational denominator too large".into()))?;
    Ok((num, den))
}

/// Self-delimiting descriptor: numerator prefix then denominator prefix.
pub fn encode_rational(r: &Rat) -> Result<BitString> {
    let (num, den) = rational_parts(r)?;
    let mut out = encode_k(num)?;
    out.extend(&encode_k(den)?);
    Ok(out)
}

pub fn decode_rational(bits: &BitString, pos: usize) -> Result<(Rat, usize)> {
    let (num, p) = decode_k(bits, pos)?;
    let (den, p) = decode_k(bits, p)?;
    if den == 0 {
        return Err(Error::Malformed("zero denominator".into()));
    }
    Ok((Rat::new(num.into(), den.into()), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn paper_examples() {
        assert_eq!(encode_k(1).unwrap().to_01_string(), "01");
        assert_eq!(encode_k(5).unwrap().to_01_string(), "110101");
    }

    #[test]
    fn round_trip_up_to_2_pow_16() {
        for k in 1..=(1u64 << 16) {
            let e = encode_k(k).unwrap();
            assert_eq!(e.len(), encoded_len_k(k));
            let (back, pos) = decode_k(&e, 0).unwrap();
            assert_eq!(back, k);
            assert_eq!(pos, e.len());
        }
    }

    #[test]
    fn concatenated_prefixes_decode_without_lookahead() {
        let mut bits = encode_k(12).unwrap();
        bits.extend(&encode_k(1).unwrap());
        bits.extend(&encode_rational(&rat(7, 5)).unwrap());
        let (a, p) = decode_k(&bits, 0).unwrap();
        let (b, p) = decode_k(&bits, p).unwrap();
        let (r, p) = decode_rational(&bits, p).unwrap();
        assert_eq!((a, b, r), (12, 1, rat(7, 5)));
        assert_eq!(p, bits.len());
    }

    #[test]
    fn truncation_is_detected() {
        let bits = encode_k(1000).unwrap();
        let cut = BitString::from_bytes(&bits.to_bytes(), bits.len() - 3).unwrap();
        assert!(decode_k(&cut, 0).is_err());
    }

    #[test]
    fn byte_packing_round_trip() {
        let bits = encode_k(300).unwrap();
        let bytes = bits.to_bytes();
        let back = BitString::from_bytes(&bytes, bits.len()).unwrap();
        assert_eq!(back, bits);
    }

    #[test]
    fn zero_k_rejected() {
        assert!(encode_k(0).is_err());
    }
}
