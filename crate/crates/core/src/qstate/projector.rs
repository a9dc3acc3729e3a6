//! Orthogonal projectors, backed either by an exact surd basis or by float
//! columns. P^2 = P and P = P^dagger hold exactly in the surd-backed case.

use crate::exact::SurdBasis;
use num_complex::Complex64;

#[derive(Debug, Clone)]
enum Columns {
    Float(Vec<Vec<Complex64>>),
    Surd(SurdBasis),
}

#[derive(Debug, Clone)]
pub struct Projector {
    dim: usize,
    columns: Columns,
}

impl Projector {
    /// Projector onto the span of the given orthonormal float columns.
    pub fn from_columns(dim: usize, columns: Vec<Vec<Complex64>>) -> Self {
        for c in &columns {
            assert_eq!(c.len(), dim);
        }
        Self {
            dim,
            columns: Columns::Float(columns),
        }
    }

    /// Projector onto the span of an exactly orthonormal basis.
    pub fn from_surd_basis(basis: SurdBasis) -> Self {
        Self {
            dim: basis.dim(),
            columns: Columns::Surd(basis),
        }
    }

    /// Projector onto selected computational basis indices.
    pub fn onto_basis_indices(dim: usize, indices: &[usize]) -> Self {
        let cols = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::from_columns(dim, cols)
    }

    pub fn identity(dim: usize) -> Self {
        Self::onto_basis_indices(dim, &(0..dim).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.columns {
            Columns::Float(c) => c.len(),
            Columns::Surd(b) => b.len(),
        }
    }

    pub fn columns_f64(&self) -> Vec<Vec<Complex64>> {
        match &self.columns {
            Columns::Float(c) => c.clone(),
            Columns::Surd(b) => b
                .columns_f64()
                .into_iter()
                .map(|col| col.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        }
    }

    pub fn surd_basis(&self) -> Option<&SurdBasis> {
        match &self.columns {
            Columns::Surd(b) => Some(b),
            Columns::Float(_) => None,
        }
    }

    /// Dense row-major matrix sum_k |y_k><y_k|.
    pub fn matrix(&self) -> Vec<Complex64> {
        let d = self.dim;
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for col in self.columns_f64() {
            for i in 0..d {
                if col[i] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] += col[i] * col[j].conj();
                }
            }
        }
        m
    }

    /// Tr(rho P) for a density matrix given as entry accessor.
    pub fn overlap(&self, rho: &super::density::DensityMatrix) -> f64 {
        self.columns_f64()
            .iter()
            .map(|c| rho.expectation(c))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gram_schmidt_exact, SparseVec};
    use crate::exact::rational::rat_int;

    #[test]
    fn projector_is_idempotent_and_hermitian() {
        let vs = vec![
            SparseVec::from_dense(&[rat_int(1), rat_int(1), rat_int(0)]),
            SparseVec::from_dense(&[rat_int(1), rat_int(0), rat_int(1)]),
        ];
        let b = gram_schmidt_exact(&vs).unwrap();
        let p = Projector::from_surd_basis(b);
        let m = p.matrix();
        let d = 3;
        // P^2 = P, P = P^dagger at float tolerance (exact in the surd backing).
        for i in 0..d {
            for j in 0..d {
                let mut sq = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    sq += m[i * d + k] * m[k * d + j];
                }
                assert!((sq - m[i * d + j]).norm() < 1e-12);
                assert!((m[i * d + j] - m[j * d + i].conj()).norm() < 1e-14);
            }
        }
        // Tr P = rank.
        let tr: Complex64 = (0..d).map(|i| m[i * d + i]).sum();
        assert!((tr.re - p.rank() as f64).abs() < 1e-12);
    }
}
