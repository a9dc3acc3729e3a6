//! Exact rank decisions over the rationals.
//!
//! `SpanBasis` keeps an incrementally reduced row-echelon copy of the span, so
//! a long stream of candidate vectors (the step-6/step-8 scans) costs one
//! elimination pass per candidate instead of a fresh Gaussian elimination.

use super::rational::Rat;
use super::sparse::SparseVec;
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Linearly independent set with an internal reduced echelon form.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    dim: usize,
    /// Reduced rows sorted by leading index; each leading coefficient is 1
    /// and its column is eliminated from all other rows.
    reduced: Vec<SparseVec>,
    /// The accepted original vectors, in insertion order.
    members: Vec<SparseVec>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            reduced: Vec::new(),
            members: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[SparseVec] {
        &self.members
    }

    /// Eliminates `v` against the current reduced rows; the remainder is zero
    /// exactly when `v` lies in the span.
    fn residual(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for row in &self.reduced {
            if r.is_zero() {
                break;
            }
            let lead = row.leading_index().expect("reduced rows are nonzero");
            let c = r.get(lead);
            if !c.is_zero() {
                r = r.add_scaled(&(-c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residual(v).is_zero()
    }

    /// Tries to insert `v`; returns true iff it was independent (and kept).
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let r = self.residual(v);
        if r.is_zero() {
            return Ok(false);
        }
        let lead = r.leading_index().unwrap();
        let inv = Rat::one() / r.get(lead);
        let new_row = r.scale(&inv);
        // Back-substitute so the form stays fully reduced.
        for row in &mut self.reduced {
            let c = row.get(lead);
            if !c.is_zero() {
                *row = row.add_scaled(&(-c), &new_row);
            }
        }
        let pos = self
            .reduced
            .partition_point(|row| row.leading_index().unwrap() < lead);
        self.reduced.insert(pos, new_row);
        self.members.push(v.clone());
        Ok(true)
    }
}

/// Decides exactly whether `candidate` lies in the column span of `span`, and
/// if not, returns the span extended by the candidate.
///
/// The span columns must already be linearly independent.
pub fn rank_extend(span: &[SparseVec], candidate: &SparseVec) -> Result<(bool, Vec<SparseVec>)> {
    let dim = candidate.dim();
    let mut basis = SpanBasis::new(dim);
    for col in span {
        if col.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: col.dim(),
            });
        }
        let fresh = basis.insert(col)?;
        assert!(fresh, "rank_extend precondition: span columns independent");
    }
    let independent = basis.insert(candidate)?;
    let mut out = span.to_vec();
    if independent {
        out.push(candidate.clone());
    }
    Ok((independent, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat_int;
    use num_bigint::BigInt;

    fn v(entries: &[i64]) -> SparseVec {
        SparseVec::from_dense(&entries.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn orthogonal_unit_vectors_are_independent() {
        let (ind, span) = rank_extend(&[v(&[1, 0])], &v(&[0, 1])).unwrap();
        assert!(ind);
        assert_eq!(span.len(), 2);
    }

    #[test]
    fn scalar_multiple_is_dependent() {
        let (ind, span) = rank_extend(&[v(&[1, 0])], &v(&[2, 0])).unwrap();
        assert!(!ind);
        assert_eq!(span.len(), 1);
    }

    #[test]
    fn exact_combination_is_dependent() {
        // (1,0,-1) = (1,1,0) - (0,1,1), decided by exact elimination.
        let (ind, _) = rank_extend(&[v(&[1, 1, 0]), v(&[0, 1, 1])], &v(&[1, 0, -1])).unwrap();
        assert!(!ind);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(rank_extend(&[v(&[1, 0])], &v(&[1, 0, 0])).is_err());
    }

    /// Fraction-free Bareiss elimination over the integers; independent of the
    /// rational echelon path used by `SpanBasis`.
    fn bareiss_rank(cols: &[Vec<i64>]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        let rows = cols[0].len();
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect())
            .collect();
        let (nr, nc) = (rows, cols.len());
        let mut rank = 0usize;
        let mut prev = BigInt::from(1);
        let mut row = 0usize;
        for col in 0..nc {
            let pivot = (row..nr).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap(row, p);
            for r in row + 1..nr {
                for c in col + 1..nc {
                    let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::from(0);
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
            if row == nr {
                break;
            }
        }
        rank
    }

    #[test]
    fn agrees_with_row_reduction_oracle_on_small_integer_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = if rng.gen_bool(0.5) { 3 } else { 4 };
            let ncols = rng.gen_range(1..=n);
            let cols: Vec<Vec<i64>> = (0..ncols)
                .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let mut basis = SpanBasis::new(n);
            for c in &cols {
                let dense: Vec<_> = c.iter().map(|&x| rat_int(x)).collect();
                let _ = basis.insert(&SparseVec::from_dense(&dense)).unwrap();
            }
            assert_eq!(basis.rank(), bareiss_rank(&cols), "cols = {cols:?}");
        }
    }
}
