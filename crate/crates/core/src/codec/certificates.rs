//! Complexity certificates measured from completed round trips.
//!
//! The artifact never computes the uncomputable complexities themselves; it
//! reports the upper-bound certificates given by actual program lengths, and
//! checks the arithmetic chain relating the finite-accuracy and
//! approximation-scheme certificates.

use super::prefix::{encoded_len_k, encoded_len_rational};
use super::program::CodecProgram;
use crate::exact::rational::Rat;
use crate::Result;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CertReport {
    pub m: u64,
    pub k: u64,
    /// l(sigma(q~)): certificate for the approximation-scheme complexity.
    pub qc_zero_len: usize,
    /// l(C(k, sigma)) = qc_zero_len + 2 floor(log2 k) + 2: certificate for
    /// the finite-accuracy complexity at delta = 1/k.
    pub qc_1k_len: usize,
    /// Accuracy-prefix overhead 2 floor(log2 k) + 2.
    pub k_prefix_len: usize,
    /// Certificate rates per qubit.
    pub qc_zero_rate: f64,
    pub qc_1k_rate: f64,
    /// ceil(m r) (asymptotic payload length) next to the actual l(q~).
    pub ceil_mr: u64,
    pub payload_qubits: u32,
    /// The chain l(C) = l(sigma) + prefix and rate_1k <= rate_zero +
    /// prefix/m, evaluated on the measured lengths.
    pub chain_ok: bool,
}

/// Builds the certificate report for a completed round trip's program.
pub fn complexity_certificates(program: &CodecProgram, r: &Rat) -> Result<CertReport> {
    let m = program.m;
    let k = program.k;
    let qc_zero_len = program.sigma_length()?;
    let qc_1k_len = program.total_length()?;
    let k_prefix_len = encoded_len_k(k);
    let qc_zero_rate = qc_zero_len as f64 / m as f64;
    let qc_1k_rate = qc_1k_len as f64 / m as f64;
    let chain_ok = qc_1k_len == qc_zero_len + k_prefix_len
        && qc_1k_rate <= qc_zero_rate + k_prefix_len as f64 / m as f64 + 1e-12;
    let ceil_mr = {
        let mr = r * Rat::from_integer(m.into());
        let fl = mr.numer() / mr.denom();
        let fl_u = u64::try_from(fl.magnitude()).unwrap_or(u64::MAX);
        if Rat::from_integer(fl) == mr {
            fl_u
        } else {
            fl_u + 1
        }
    };
    let _ = encoded_len_rational(r)?; // the descriptor must be encodable
    Ok(CertReport {
        m,
        k,
        qc_zero_len,
        qc_1k_len,
        k_prefix_len,
        qc_zero_rate,
        qc_1k_rate,
        ceil_mr,
        payload_qubits: program.payload_qubits(),
        chain_ok,
    })
}
