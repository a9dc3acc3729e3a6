//! State files.
//!
//! JSON layout: `{"kind":"pure"|"mixed", "space":"fixed"|"varlen", "n":int,
//! "data": ...}` where pure data is a list of `[re, im]` amplitude pairs over
//! the big-endian computational basis and mixed data is the dense row-major
//! matrix of `[re, im]` entries. Numbers are decimal strings so that
//! arbitrary-precision amplitudes survive the round trip.

use super::density::{DensityMatrix, DEFAULT_PRECISION_BITS};
use super::qubit_string::{varlen_dim, QubitString};
use crate::exact::rational::{parse_rat, rat_to_decimal_string, rat_to_f64, Rat};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub kind: String,
    pub space: String,
    pub n: u32,
    pub data: serde_json::Value,
}

/// Decimal digits used when serializing f64-precision states.
const F64_DIGITS: usize = 17;

fn pair(re: &Rat, im: &Rat, digits: usize) -> serde_json::Value {
    serde_json::json!([
        rat_to_decimal_string(re, digits),
        rat_to_decimal_string(im, digits)
    ])
}

fn f64_pair(z: Complex64) -> serde_json::Value {
    serde_json::json!([format!("{:.*e}", F64_DIGITS, z.re), format!("{:.*e}", F64_DIGITS, z.im)])
}

impl StateFile {
    pub fn expected_dim(&self) -> usize {
        match self.space.as_str() {
            "varlen" => varlen_dim(self.n),
            _ => 1usize << self.n,
        }
    }

    /// Pure fixed-length state from exact rational amplitude pairs.
    pub fn pure_fixed_exact(n: u32, amps: &[(Rat, Rat)], digits: usize) -> Self {
        let data = amps.iter().map(|(re, im)| pair(re, im, digits)).collect();
        Self {
            kind: "pure".into(),
            space: "fixed".into(),
            n,
            data: serde_json::Value::Array(data),
        }
    }

    pub fn pure_fixed_f64(n: u32, amps: &[Complex64]) -> Self {
        let data = amps.iter().map(|z| f64_pair(*z)).collect();
        Self {
            kind: "pure".into(),
            space: "fixed".into(),
            n,
            data: serde_json::Value::Array(data),
        }
    }

    pub fn mixed_fixed_f64(n: u32, rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let rows: Vec<serde_json::Value> = (0..d)
            .map(|i| {
                serde_json::Value::Array((0..d).map(|j| f64_pair(rho.entry(i, j))).collect())
            })
            .collect();
        Self {
            kind: "mixed".into(),
            space: "fixed".into(),
            n,
            data: serde_json::Value::Array(rows),
        }
    }

    pub fn varlen_mixed_f64(s: &QubitString) -> Self {
        let mut f = Self::mixed_fixed_f64(s.max_len(), s.density());
        f.space = "varlen".into();
        f
    }

    fn parse_pair(v: &serde_json::Value) -> Result<(Rat, Rat)> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Malformed("amplitude must be a [re, im] pair".into()))?;
        let re = arr[0]
            .as_str()
            .ok_or_else(|| Error::Malformed("amplitude entries must be strings".into()))?;
        let im = arr[1]
            .as_str()
            .ok_or_else(|| Error::Malformed("amplitude entries must be strings".into()))?;
        Ok((parse_rat(re)?, parse_rat(im)?))
    }

    /// Exact rational amplitudes of a pure state file. Decimal strings are
    /// rationals, so this parse is lossless.
    pub fn amplitudes_exact(&self) -> Result<Vec<(Rat, Rat)>> {
        if self.kind != "pure" {
            return Err(Error::Malformed("expected a pure state file".into()));
        }
        let arr = self
            .data
            .as_array()
            .ok_or_else(|| Error::Malformed("pure data must be an array".into()))?;
        if arr.len() != self.expected_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.expected_dim(),
                got: arr.len(),
            });
        }
        arr.iter().map(Self::parse_pair).collect()
    }

    /// Working-precision density matrix (pure or mixed).
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dim = self.expected_dim();
        match self.kind.as_str() {
            "pure" => {
                let amps = self.amplitudes_exact()?;
                let v: Vec<Complex64> = amps
                    .iter()
                    .map(|(re, im)| Complex64::new(rat_to_f64(re), rat_to_f64(im)))
                    .collect();
                DensityMatrix::from_pure(&v)
            }
            "mixed" => {
                let rows = self
                    .data
                    .as_array()
                    .ok_or_else(|| Error::Malformed("mixed data must be an array".into()))?;
                if rows.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: rows.len(),
                    });
                }
                let mut data = Vec::with_capacity(dim * dim);
                for row in rows {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == dim)
                        .ok_or_else(|| Error::Malformed("bad mixed row".into()))?;
                    for v in row {
                        let (re, im) = Self::parse_pair(v)?;
                        data.push(Complex64::new(rat_to_f64(&re), rat_to_f64(&im)));
                    }
                }
                DensityMatrix::new(dim, data, DEFAULT_PRECISION_BITS)
            }
            other => Err(Error::Malformed(format!("unknown state kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
