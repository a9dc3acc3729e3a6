//! Variable-length qubit strings: density operators on the direct sum
//! of the 0..=n qubit sectors.
//!
//! The basis is ordered by length, then lexicographically within a sector
//! (lambda, 0, 1, 00, 01, 10, 11, ...), so sector k occupies the index range
//! [2^k - 1, 2^(k+1) - 1) and the total dimension is 2^(n+1) - 1.

use super::density::DensityMatrix;
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct QubitString {
    max_len: u32,
    rho: DensityMatrix,
}

/// First index of sector k in the direct-sum basis.
pub fn sector_offset(k: u32) -> usize {
    (1usize << k) - 1
}

/// Total dimension of the direct sum of sectors 0..=n.
pub fn varlen_dim(n: u32) -> usize {
    (1usize << (n + 1)) - 1
}

impl QubitString {
    pub fn new(max_len: u32, rho: DensityMatrix) -> Result<Self> {
        if rho.dim() != varlen_dim(max_len) {
            return Err(Error::DimensionMismatch {
                expected: varlen_dim(max_len),
                got: rho.dim(),
            });
        }
        Ok(Self { max_len, rho })
    }

    /// The pure computational-basis string |b1...bk>.
    pub fn from_classical_bits(max_len: u32, bits: &[bool]) -> Result<Self> {
        let k = bits.len() as u32;
        if k > max_len {
            return Err(Error::InvalidParameter(format!(
                "string length {k} exceeds max {max_len}"
            )));
        }
        let mut index = sector_offset(k);
        for (pos, b) in bits.iter().enumerate() {
            if *b {
                index += 1 << (bits.len() - 1 - pos);
            }
        }
        let dim = varlen_dim(max_len);
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            max_len,
            rho: DensityMatrix::from_pure(&amps)?,
        })
    }

    /// Embeds a fixed-length k-qubit state as the length-k sector block.
    pub fn embed_fixed(state: &DensityMatrix, k: u32, max_len: u32) -> Result<Self> {
        if state.dim() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                got: state.dim(),
            });
        }
        if k > max_len {
            return Err(Error::InvalidParameter(format!(
                "sector {k} exceeds max length {max_len}"
            )));
        }
        let dim = varlen_dim(max_len);
        let off = sector_offset(k);
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..state.dim() {
            for j in 0..state.dim() {
                data[(off + i) * dim + (off + j)] = state.entry(i, j);
            }
        }
        Ok(Self {
            max_len,
            rho: DensityMatrix::from_raw(dim, data, state.precision_bits()),
        })
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }

    /// Probability mass on the length-k sector.
    pub fn sector_mass(&self, k: u32) -> f64 {
        let off = sector_offset(k);
        (off..off + (1 << k))
            .map(|i| self.rho.entry(i, i).re)
            .sum()
    }

    /// The length of the qubit string: the smallest n such that the support
    /// lies in the sectors 0..=n. Sector mass below the 2^-(N-4) support
    /// threshold does not count.
    pub fn length(&self) -> u32 {
        let thr = self.rho.support_threshold();
        // A sector contributes to the support iff any mass touches it; the
        // row mass of the block bounds off-diagonal support by Cauchy-Schwarz.
        (0..=self.max_len)
            .rev()
            .find(|&k| self.sector_mass(k) > thr)
            .unwrap_or(0)
    }
}
