//! Self-contained cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! No external numerics dependency; results are reproducible across platforms
//! up to f64 rounding. Convergence threshold is 2^-(N-8) on the largest
//! off-diagonal modulus, at the caller's precision tag N.

use num_complex::Complex64;

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(data: &[Complex64], dim: usize, precision_bits: u32) -> Vec<f64> {
    let (vals, _) = jacobi(data, dim, precision_bits, false);
    vals
}

/// Eigenvalues (ascending) with matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(
    data: &[Complex64],
    dim: usize,
    precision_bits: u32,
) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let (vals, vecs) = jacobi(data, dim, precision_bits, true);
    (vals, vecs.expect("vectors requested"))
}

fn jacobi(
    data: &[Complex64],
    dim: usize,
    precision_bits: u32,
    want_vectors: bool,
) -> (Vec<f64>, Option<Vec<Vec<Complex64>>>) {
    assert_eq!(data.len(), dim * dim);
    let mut a = data.to_vec();
    let mut v = if want_vectors {
        let mut id = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            id[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Some(id)
    } else {
        None
    };
    if dim <= 1 {
        let vals = if dim == 1 { vec![a[0].re] } else { vec![] };
        return sorted(vals, v, dim);
    }
    let tol = 2f64.powi(-(precision_bits as i32 - 8));
    for _sweep in 0..100 {
        let mut off_max = 0.0f64;
        for p in 0..dim {
            for q in p + 1..dim {
                off_max = off_max.max(a[p * dim + q].norm());
            }
        }
        if off_max < tol {
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                let r = apq.norm();
                if r < tol / (dim as f64 * dim as f64) {
                    continue;
                }
                let app = a[p * dim + p].re;
                let aqq = a[q * dim + q].re;
                // Phase so the off-diagonal becomes real, then a real
                // Jacobi rotation.
                let phase = apq / r; // e^{i phi}
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column operations: J has J[p][p]=c, J[q][p]=-s*conj(phase)?
                // We use the explicit unitary J with
                //   J[p][p] = c, J[p][q] = s * phase,
                //   J[q][p] = -s * phase.conj(), J[q][q] = c,
                // and update A <- J^dagger A J, V <- V J.
                let jpq = s * phase;
                let jqp = -s * phase.conj();
                // A <- A J (columns p, q)
                for i in 0..dim {
                    let aip = a[i * dim + p];
                    let aiq = a[i * dim + q];
                    a[i * dim + p] = aip * c + aiq * jqp;
                    a[i * dim + q] = aip * jpq + aiq * c;
                }
                // A <- J^dagger A (rows p, q)
                for j in 0..dim {
                    let apj = a[p * dim + j];
                    let aqj = a[q * dim + j];
                    a[p * dim + j] = apj * c + aqj * jqp.conj();
                    a[q * dim + j] = apj * jpq.conj() + aqj * c;
                }
                if let Some(v) = v.as_mut() {
                    for i in 0..dim {
                        let vip = v[i * dim + p];
                        let viq = v[i * dim + q];
                        v[i * dim + p] = vip * c + viq * jqp;
                        v[i * dim + q] = vip * jpq + viq * c;
                    }
                }
            }
        }
    }
    let vals: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
    sorted(vals, v, dim)
}

fn sorted(
    vals: Vec<f64>,
    vecs: Option<Vec<Complex64>>,
    dim: usize,
) -> (Vec<f64>, Option<Vec<Vec<Complex64>>>) {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let svals = order.iter().map(|&i| vals[i]).collect();
    let svecs = vecs.map(|v| {
        order
            .iter()
            .map(|&col| (0..dim).map(|row| v[row * dim + col]).collect())
            .collect()
    });
    (svals, svecs)
}
