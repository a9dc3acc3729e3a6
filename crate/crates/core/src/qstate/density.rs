//! Density matrices at working precision.

use super::eigen;
use crate::{Error, Result};
use num_complex::Complex64;

/// Default precision tag in trusted binary digits for f64-backed numerics.
/// All validity/support thresholds are derived as 2^-(N-4).
pub const DEFAULT_PRECISION_BITS: u32 = 40;

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    /// Row-major, exactly Hermitian after construction.
    data: Vec<Complex64>,
    precision_bits: u32,
}

impl DensityMatrix {
    /// Support / validity threshold 2^-(N-4) for the given precision tag.
    pub fn threshold_for(precision_bits: u32) -> f64 {
        2f64.powi(-(precision_bits as i32 - 4))
    }

    /// Validates Hermiticity, unit trace and positive semidefiniteness within
    /// the 2^-(N-4) threshold, then stores the exactly symmetrized matrix.
    pub fn new(dim: usize, data: Vec<Complex64>, precision_bits: u32) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        let tol = Self::threshold_for(precision_bits);
        for i in 0..dim {
            for j in i..dim {
                let d = data[i * dim + j] - data[j * dim + i].conj();
                if d.norm() > tol {
                    return Err(Error::Malformed(format!(
                        "matrix not Hermitian at ({i},{j}): defect {:e}",
                        d.norm()
                    )));
                }
            }
        }
        let mut m = Self {
            dim,
            data,
            precision_bits,
        };
        m.symmetrize();
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Malformed(format!("trace {} != 1", tr.re)));
        }
        let eigs = eigen::hermitian_eigenvalues(&m.data, dim, precision_bits);
        if let Some(min) = eigs.iter().cloned().reduce(f64::min) {
            if min < -tol {
                return Err(Error::Malformed(format!(
                    "not positive semidefinite: min eigenvalue {min:e}"
                )));
            }
        }
        Ok(m)
    }

    /// Constructs without the PSD check (for raw Hermitian observables and
    /// intermediate arithmetic); still symmetrizes.
    pub fn from_raw(dim: usize, data: Vec<Complex64>, precision_bits: u32) -> Self {
        assert_eq!(data.len(), dim * dim);
        let mut m = Self {
            dim,
            data,
            precision_bits,
        };
        m.symmetrize();
        m
    }

    fn symmetrize(&mut self) {
        let d = self.dim;
        for i in 0..d {
            self.data[i * d + i] = Complex64::new(self.data[i * d + i].re, 0.0);
            for j in i + 1..d {
                let avg = 0.5 * (self.data[i * d + j] + self.data[j * d + i].conj());
                self.data[i * d + j] = avg;
                self.data[j * d + i] = avg.conj();
            }
        }
    }

    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let dim = amplitudes.len();
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::Malformed("zero state vector".into()));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = amplitudes[i] * amplitudes[j].conj() / norm2;
            }
        }
        Self::new(dim, data, DEFAULT_PRECISION_BITS)
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let dim = probs.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, p) in probs.iter().enumerate() {
            data[i * dim + i] = Complex64::new(*p, 0.0);
        }
        Self::new(dim, data, DEFAULT_PRECISION_BITS)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self {
            dim,
            data,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Support threshold 2^-(N-4) at this matrix's precision tag.
    pub fn support_threshold(&self) -> f64 {
        Self::threshold_for(self.precision_bits)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen::hermitian_eigenvalues(&self.data, self.dim, self.precision_bits)
    }

    /// Eigenvalues and orthonormal eigenvectors (columns).
    pub fn eigen_decomposition(&self) -> (Vec<f64>, Vec<Vec<Complex64>>) {
        eigen::hermitian_eigen(&self.data, self.dim, self.precision_bits)
    }

    /// rho1 - rho2 as a raw Hermitian matrix.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_raw(
            self.dim,
            data,
            self.precision_bits.min(other.precision_bits),
        ))
    }

    /// Convex combination sum_i w_i rho_i.
    pub fn mix(parts: &[(f64, &Self)]) -> Result<Self> {
        let dim = parts
            .first()
            .map(|(_, m)| m.dim)
            .ok_or_else(|| Error::Malformed("empty mixture".into()))?;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        let mut prec = u32::MAX;
        for (w, m) in parts {
            if m.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.dim,
                });
            }
            prec = prec.min(m.precision_bits);
            for (d, s) in data.iter_mut().zip(&m.data) {
                *d += s * w;
            }
        }
        Ok(Self::from_raw(dim, data, prec))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i1 in 0..da {
            for j1 in 0..da {
                let a = self.data[i1 * da + j1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..db {
                    for j2 in 0..db {
                        let b = other.data[i2 * db + j2];
                        data[(i1 * db + i2) * dim + (j1 * db + j2)] = a * b;
                    }
                }
            }
        }
        Self::from_raw(dim, data, self.precision_bits.min(other.precision_bits))
    }

    /// Conjugation u rho u^dagger by a dim x dim matrix (row-major).
    pub fn conjugate_by(&self, u: &[Complex64]) -> Self {
        let d = self.dim;
        assert_eq!(u.len(), d * d);
        // tmp = u * rho
        let mut tmp = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = u[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    tmp[i * d + j] += a * self.data[k * d + j];
                }
            }
        }
        // out = tmp * u^dagger
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += tmp[i * d + k] * u[j * d + k].conj();
                }
                out[i * d + j] = acc;
            }
        }
        Self::from_raw(d, out, self.precision_bits)
    }

    /// <v| rho |v> for a raw vector.
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let d = self.dim;
        assert_eq!(v.len(), d);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += v[i].conj() * self.data[i * d + j] * v[j];
            }
        }
        acc.re
    }
}

/// Weighted ensemble of density matrices on a common dimension.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub weights: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::Malformed("ensemble size mismatch".into()));
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::Malformed("ensemble dimension mismatch".into()));
        }
        if weights.iter().any(|w| *w < 0.0) {
            return Err(Error::InvalidParameter("negative ensemble weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 2f64.powi(-40) {
            return Err(Error::InvalidParameter(format!(
                "ensemble weights sum to {total}, not 1"
            )));
        }
        Ok(Self { weights, states })
    }

    pub fn mixture(&self) -> DensityMatrix {
        let parts: Vec<(f64, &DensityMatrix)> = self
            .weights
            .iter()
            .cloned()
            .zip(self.states.iter())
            .collect();
        DensityMatrix::mix(&parts).expect("validated at construction")
    }
}
