//! Exact Gram-Schmidt without normalization.
//!
//! Orthogonal columns are kept as (rational vector, rational norm-squared)
//! pairs: the orthogonalization itself stays inside the rationals and a single
//! deferred square root per column turns the pair into a unit vector. The
//! interpreted column is u_j = v_j / sqrt(normSquared_j).

use super::rational::Rat;
use super::sparse::SparseVec;
use crate::{Error, Result};
use num_traits::Zero;

/// One unnormalized orthogonal column with its exact squared norm.
#[derive(Debug, Clone)]
pub struct SurdColumn {
    pub v: SparseVec,
    pub norm2: Rat,
}

/// Exactly-orthonormal basis matrix: column j is v_j / sqrt(norm2_j).
#[derive(Debug, Clone)]
pub struct SurdBasis {
    dim: usize,
    columns: Vec<SurdColumn>,
}

impl SurdBasis {
    pub fn new(dim: usize, columns: Vec<SurdColumn>) -> Self {
        for c in &columns {
            assert_eq!(c.v.dim(), dim);
            debug_assert_eq!(c.v.norm2(), c.norm2);
        }
        Self { dim, columns }
    }

    pub fn identity(dim: usize) -> Self {
        let columns = (0..dim)
            .map(|i| SurdColumn {
                v: SparseVec::unit(dim, i),
                norm2: Rat::from_integer(1.into()),
            })
            .collect();
        Self { dim, columns }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[SurdColumn] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &SurdColumn {
        &self.columns[j]
    }

    /// Tensors every column with the full computational basis of a
    /// `2^pad_qubits`-dimensional factor on the low-order side; the result is
    /// again exactly orthonormal with `len * 2^pad_qubits` columns, ordered
    /// (column, pad index) lexicographically.
    pub fn tensor_identity(&self, pad_qubits: u32) -> Self {
        let pad_dim = 1usize << pad_qubits;
        let mut columns = Vec::with_capacity(self.columns.len() * pad_dim);
        for c in &self.columns {
            for b in 0..pad_dim {
                columns.push(SurdColumn {
                    v: c.v.tensor_unit(pad_dim, b),
                    norm2: c.norm2.clone(),
                });
            }
        }
        Self {
            dim: self.dim * pad_dim,
            columns,
        }
    }

    /// Exact Gram-matrix identity check: v_j . v_k = 0 for j != k and
    /// v_j . v_j = norm2_j, i.e. U^T U = 1 with zero tolerance.
    pub fn is_exactly_orthonormal(&self) -> bool {
        for (j, cj) in self.columns.iter().enumerate() {
            if cj.v.norm2() != cj.norm2 || cj.norm2.is_zero() {
                return false;
            }
            for ck in self.columns.iter().skip(j + 1) {
                if !cj.v.dot(&ck.v).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Interpreted columns as f64 unit vectors (for cross checks and reports).
    pub fn columns_f64(&self) -> Vec<Vec<f64>> {
        self.columns
            .iter()
            .map(|c| {
                let s = super::rational::rat_to_f64(&c.norm2).sqrt();
                c.v.to_dense()
                    .iter()
                    .map(|x| super::rational::rat_to_f64(x) / s)
                    .collect()
            })
            .collect()
    }
}

/// Applies exact Gram-Schmidt orthogonalization to linearly independent
/// rational vectors, preserving input order. Errors on a dependent input set.
pub fn gram_schmidt_exact(vectors: &[SparseVec]) -> Result<SurdBasis> {
    let Some(first) = vectors.first() else {
        return Ok(SurdBasis::new(0, Vec::new()));
    };
    let dim = first.dim();
    let mut cols: Vec<SurdColumn> = Vec::with_capacity(vectors.len());
    for x in vectors {
        if x.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.dim(),
            });
        }
        let mut w = x.clone();
        for c in &cols {
            // Sparse supports make cross-sector projections free.
            let num = c.v.dot(&w);
            if !num.is_zero() {
                let coeff = -(num / &c.norm2);
                w = w.add_scaled(&coeff, &c.v);
            }
        }
        let norm2 = w.norm2();
        if norm2.is_zero() {
            return Err(Error::DependentInput);
        }
        // Rescale to the primitive integer representative: same direction,
        // smallest integer entries, keeps later dot products cheap.
        let w = w.primitive_integer();
        let norm2 = w.norm2();
        cols.push(SurdColumn { v: w, norm2 });
    }
    Ok(SurdBasis::new(dim, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    fn v(entries: &[i64]) -> SparseVec {
        SparseVec::from_dense(&entries.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn standard_basis_is_unchanged() {
        let vs: Vec<_> = (0..4).map(|i| SparseVec::unit(4, i)).collect();
        let b = gram_schmidt_exact(&vs).unwrap();
        assert!(b.is_exactly_orthonormal());
        for (i, c) in b.columns().iter().enumerate() {
            assert_eq!(c.norm2, rat_int(1));
            assert_eq!(c.v, SparseVec::unit(4, i));
        }
    }

    #[test]
    fn textbook_two_vector_case() {
        let b = gram_schmidt_exact(&[v(&[1, 1]), v(&[1, 0])]).unwrap();
        assert!(b.is_exactly_orthonormal());
        assert_eq!(b.column(0).norm2, rat_int(2));
        // Second column is (1,-1)/2 up to the primitive-integer rescale:
        // direction (1,-1), norm2 = 2.
        assert_eq!(b.column(1).v.to_dense(), vec![rat_int(1), rat_int(-1)]);
        assert_eq!(b.column(1).norm2, rat_int(2));
    }

    #[test]
    fn rejects_dependent_input() {
        assert!(matches!(
            gram_schmidt_exact(&[v(&[1, 2]), v(&[2, 4])]),
            Err(Error::DependentInput)
        ));
    }

    #[test]
    fn gram_matrix_is_identity_on_random_independent_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 50 {
            let dim = rng.gen_range(2..6);
            let k = rng.gen_range(1..=dim);
            let vs: Vec<SparseVec> = (0..k)
                .map(|_| {
                    SparseVec::from_dense(
                        &(0..dim)
                            .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            match gram_schmidt_exact(&vs) {
                Ok(b) => {
                    assert!(b.is_exactly_orthonormal());
                    done += 1;
                }
                Err(Error::DependentInput) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn tensor_identity_doubles_columns_per_qubit() {
        let b = gram_schmidt_exact(&[v(&[1, 1])]).unwrap();
        let t = b.tensor_identity(1);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.len(), 2);
        assert!(t.is_exactly_orthonormal());
        assert_eq!(t.column(0).v.to_dense(), vec![rat_int(1), rat_int(0), rat_int(1), rat_int(0)]);
        assert_eq!(t.column(1).v.to_dense(), vec![rat_int(0), rat_int(1), rat_int(0), rat_int(1)]);
    }
}
