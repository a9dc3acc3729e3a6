//! The encoded program C(k, sigma(q~)) and its binary container.
//!
//! Container layout: magic "EQC1", one byte holding the number of prefix
//! bits modulo 8 padding, four big-endian bytes with the prefix bit count,
//! the packed prefix bits k~ | m~ | r-descriptor (big-endian within bytes,
//! zero-padded to a byte boundary), a four-byte big-endian payload length,
//! then the payload state JSON.

use super::prefix::{
    decode_k, decode_rational, encode_k, encode_rational, encoded_len_k, encoded_len_rational,
    BitString,
};
use crate::exact::rational::Rat;
use crate::qstate::io::StateFile;
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"EQC1";

#[derive(Debug, Clone)]
pub struct CodecProgram {
    pub k: u64,
    pub m: u64,
    pub r: Rat,
    /// Compressed qubit payload (a pure fixed-length state file of
    /// payload_qubits qubits).
    pub payload: StateFile,
}

impl CodecProgram {
    /// Payload sector length l(q~) in qubits.
    pub fn payload_qubits(&self) -> u32 {
        self.payload.n
    }

    /// l(sigma(q~)) = 2 floor(log2 m) + 2 + c + l(q~): the program without
    /// the accuracy prefix.
    pub fn sigma_length(&self) -> Result<usize> {
        Ok(encoded_len_k(self.m) + encoded_len_rational(&self.r)? + self.payload_qubits() as usize)
    }

    /// l(C(k, sigma)) = 2 floor(log2 k) + 2 + l(sigma).
    pub fn total_length(&self) -> Result<usize> {
        Ok(encoded_len_k(self.k) + self.sigma_length()?)
    }

    /// The classical prefix bits k~ | m~ | r~.
    pub fn prefix_bits(&self) -> Result<BitString> {
        let mut bits = encode_k(self.k)?;
        bits.extend(&encode_k(self.m)?);
        bits.extend(&encode_rational(&self.r)?);
        Ok(bits)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let bits = self.prefix_bits()?;
        let packed = bits.to_bytes();
        let payload = serde_json::to_vec(&self.payload)?;
        let mut out = Vec::with_capacity(4 + 4 + packed.len() + 4 + payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(bits.len() as u32).to_be_bytes());
        out.extend_from_slice(&packed);
        out.extend_from_slice(&(payload.len() as u32).to_be_bytes());
        out.extend_from_slice(&payload);
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let need = |n: usize| -> Result<()> {
            if bytes.len() < n {
                Err(Error::Malformed("truncated program file".into()))
            } else {
                Ok(())
            }
        };
        need(8)?;
        if &bytes[0..4] != MAGIC {
            return Err(Error::Malformed("bad magic, not an EQC1 program".into()));
        }
        let bit_len = u32::from_be_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let packed_len = bit_len.div_ceil(8);
        need(8 + packed_len + 4)?;
        let bits = BitString::from_bytes(&bytes[8..8 + packed_len], bit_len)?;
        let (k, pos) = decode_k(&bits, 0)?;
        let (m, pos) = decode_k(&bits, pos)?;
        let (r, pos) = decode_rational(&bits, pos)?;
        if pos != bit_len {
            return Err(Error::Malformed("trailing prefix bits".into()));
        }
        let off = 8 + packed_len;
        let payload_len =
            u32::from_be_bytes(bytes[off..off + 4].try_into().unwrap()) as usize;
        need(off + 4 + payload_len)?;
        let payload: StateFile = serde_json::from_slice(&bytes[off + 4..off + 4 + payload_len])?;
        if payload.kind != "pure" || payload.space != "fixed" {
            return Err(Error::Malformed(
                "program payload must be a pure fixed-length state".into(),
            ));
        }
        Ok(Self { k, m, r, payload })
    }
}

/// Assembles C(k, sigma(q~)) = |k~><k~| (x) |m~><m~| (x) |r~><r~| (x) q~.
pub fn assemble_program(k: u64, m: u64, r: &Rat, payload: StateFile) -> Result<CodecProgram> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if payload.kind != "pure" || payload.space != "fixed" {
        return Err(Error::Malformed("payload must be pure and fixed-length".into()));
    }
    Ok(CodecProgram {
        k,
        m,
        r: r.clone(),
        payload,
    })
}
