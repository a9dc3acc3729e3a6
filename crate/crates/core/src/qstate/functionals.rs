//! Entropy, distance and related functionals. All logarithms are base 2.

use super::density::{DensityMatrix, Ensemble};
use super::projector::Projector;
use crate::{Error, Result};
use num_complex::Complex64;

/// Half the trace norm of rho - sigma: 1/2 sum_i |lambda_i|.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let diff = rho.sub(sigma)?;
    let sum: f64 = diff.eigenvalues().iter().map(|l| l.abs()).sum();
    Ok(0.5 * sum)
}

/// Von Neumann entropy -Tr(rho log2 rho), with 0 log 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Relative entropy value: finite or the distinguished infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelEntropy {
    Finite(f64),
    Infinite,
}

impl RelEntropy {
    pub fn as_f64(&self) -> f64 {
        match self {
            RelEntropy::Finite(v) => *v,
            RelEntropy::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RelEntropy::Finite(_))
    }
}

/// S(rho1 || rho2) = Tr(rho1 (log rho1 - log rho2)) when supp rho1 <= supp rho2,
/// infinity otherwise. The support test uses the eigenvalue threshold
/// 2^-(N-4) at the pair's precision tag.
pub fn relative_entropy(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<RelEntropy> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim(),
            got: rho2.dim(),
        });
    }
    let thr = rho1.support_threshold().max(rho2.support_threshold());
    let (vals2, vecs2) = rho2.eigen_decomposition();
    // Mass of rho1 outside supp(rho2).
    let mut outside = 0.0;
    let mut tr_rho1_log_rho2 = 0.0;
    for (l2, v2) in vals2.iter().zip(&vecs2) {
        let m = rho1.expectation(v2);
        if *l2 > thr {
            if m > 0.0 {
                tr_rho1_log_rho2 += m * l2.log2();
            }
        } else {
            outside += m.max(0.0);
        }
    }
    if outside > thr {
        return Ok(RelEntropy::Infinite);
    }
    let s1 = von_neumann_entropy(rho1);
    Ok(RelEntropy::Finite(-s1 - tr_rho1_log_rho2))
}

/// Holevo chi: S(mixture) - sum_i lambda_i S(rho_i).
pub fn holevo_chi(ensemble: &Ensemble) -> f64 {
    let mixture = ensemble.mixture();
    let avg: f64 = ensemble
        .weights
        .iter()
        .zip(&ensemble.states)
        .map(|(w, s)| w * von_neumann_entropy(s))
        .sum();
    von_neumann_entropy(&mixture) - avg
}

/// Pinching R(a) = sum_i p_i a p_i for mutually orthogonal projectors that
/// resolve the identity (checked within 2^-40).
pub fn pinch(a: &DensityMatrix, projectors: &[Projector]) -> Result<DensityMatrix> {
    let d = a.dim();
    let tol = 2f64.powi(-40);
    // Resolution-of-identity check: sum of projector matrices equals 1.
    let mut sum = vec![Complex64::new(0.0, 0.0); d * d];
    for p in projectors {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
        let m = p.matrix();
        for (s, v) in sum.iter_mut().zip(&m) {
            *s += v;
        }
    }
    let mut defect = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((sum[i * d + j] - want).norm());
        }
    }
    if defect > tol {
        return Err(Error::NotResolutionOfIdentity(defect));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for p in projectors {
        let m = p.matrix();
        // p a p
        let mut pa = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let v = m[i * d + k];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    pa[i * d + j] += v * a.entry(k, j);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += pa[i * d + k] * m[k * d + j];
                }
                out[i * d + j] += acc;
            }
        }
    }
    Ok(DensityMatrix::from_raw(d, out, a.precision_bits()))
}

/// eta(delta) = -delta log2 delta (continuity modulus of the entropy).
pub fn eta(delta: f64) -> f64 {
    assert!(delta > 0.0 && delta < 1.0, "eta domain is (0,1)");
    -delta * delta.log2()
}

/// Fannes continuity bound delta * dimLog + eta(delta); the caller supplies
/// dimLog = log2 of the effective dimension. Requires 0 < delta < 1/e.
pub fn fannes_bound(delta: f64, dim_log: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0 / std::f64::consts::E) {
        return Err(Error::InvalidParameter(format!(
            "fannes_bound needs 0 < delta < 1/e, got {delta}"
        )));
    }
    Ok(delta * dim_log + eta(delta))
}

/// Which tensor factor to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a state on H_a (x) H_b with dim = da * db.
pub fn partial_trace(
    rho: &DensityMatrix,
    da: usize,
    db: usize,
    keep: Keep,
) -> Result<DensityMatrix> {
    if da * db != rho.dim() {
        return Err(Error::Malformed(format!(
            "dimension {} does not factor as {da} x {db}",
            rho.dim()
        )));
    }
    let out = match keep {
        Keep::First => {
            let mut data = vec![Complex64::new(0.0, 0.0); da * da];
            for i in 0..da {
                for j in 0..da {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..db {
                        acc += rho.entry(i * db + k, j * db + k);
                    }
                    data[i * da + j] = acc;
                }
            }
            DensityMatrix::from_raw(da, data, rho.precision_bits())
        }
        Keep::Second => {
            let mut data = vec![Complex64::new(0.0, 0.0); db * db];
            for i in 0..db {
                for j in 0..db {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..da {
                        acc += rho.entry(k * db + i, k * db + j);
                    }
                    data[i * db + j] = acc;
                }
            }
            DensityMatrix::from_raw(db, data, rho.precision_bits())
        }
    };
    Ok(out)
}
