//! Exact rational matrices with interchangeable dense and sparse storage.

use super::rational::Rat;
use super::sparse::SparseVec;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Representation flag + payload. Sparse and dense forms agree entrywise and
/// are interconvertible; products and sums are exact in either form.
#[derive(Debug, Clone)]
pub enum Repr {
    /// Row-major dense entries, length rows*cols.
    Dense(Vec<Rat>),
    /// (row, col) -> value map of the nonzero entries.
    Sparse(BTreeMap<(usize, usize), Rat>),
}

#[derive(Debug, Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            repr: Repr::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BTreeMap::new();
        for i in 0..n {
            m.insert((i, i), Rat::one());
        }
        Self {
            rows: n,
            cols: n,
            repr: Repr::Sparse(m),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Self {
            rows: r,
            cols: c,
            repr: Repr::Dense(rows.into_iter().flatten().collect()),
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Rat)>) -> Self {
        let mut m = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols);
            if !v.is_zero() {
                let prev = m.insert((r, c), v);
                assert!(prev.is_none(), "duplicate entry at ({r},{c})");
            }
        }
        Self {
            rows,
            cols,
            repr: Repr::Sparse(m),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols);
        match &self.repr {
            Repr::Dense(d) => d[r * self.cols + c].clone(),
            Repr::Sparse(m) => m.get(&(r, c)).cloned().unwrap_or_else(Rat::zero),
        }
    }

    pub fn to_dense(&self) -> Self {
        match &self.repr {
            Repr::Dense(_) => self.clone(),
            Repr::Sparse(m) => {
                let mut d = vec![Rat::zero(); self.rows * self.cols];
                for ((r, c), v) in m {
                    d[r * self.cols + c] = v.clone();
                }
                Self {
                    rows: self.rows,
                    cols: self.cols,
                    repr: Repr::Dense(d),
                }
            }
        }
    }

    pub fn to_sparse(&self) -> Self {
        match &self.repr {
            Repr::Sparse(_) => self.clone(),
            Repr::Dense(d) => {
                let mut m = BTreeMap::new();
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        let v = &d[r * self.cols + c];
                        if !v.is_zero() {
                            m.insert((r, c), v.clone());
                        }
                    }
                }
                Self {
                    rows: self.rows,
                    cols: self.cols,
                    repr: Repr::Sparse(m),
                }
            }
        }
    }

    pub fn nonzeros(&self) -> Vec<(usize, usize, Rat)> {
        match &self.repr {
            Repr::Sparse(m) => m.iter().map(|(&(r, c), v)| (r, c, v.clone())).collect(),
            Repr::Dense(_) => self.to_sparse().nonzeros(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = BTreeMap::new();
        for (r, c, v) in self.nonzeros() {
            out.insert((c, r), v);
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            repr: Repr::Sparse(out),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (r, c, v) in self.nonzeros().into_iter().chain(other.nonzeros()) {
            let e = m.entry((r, c)).or_insert_with(Rat::zero);
            *e += v;
        }
        m.retain(|_, v| !v.is_zero());
        Self {
            rows: self.rows,
            cols: self.cols,
            repr: Repr::Sparse(m),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        // Sparse row-by-row product.
        let a = self.to_sparse();
        let b = other.to_sparse();
        let mut b_rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); b.rows];
        for (r, c, v) in b.nonzeros() {
            b_rows[r].push((c, v));
        }
        let mut out: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (r, k, va) in a.nonzeros() {
            for (c, vb) in &b_rows[k] {
                let e = out.entry((r, *c)).or_insert_with(Rat::zero);
                *e += &va * vb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Self {
            rows: self.rows,
            cols: other.cols,
            repr: Repr::Sparse(out),
        }
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        assert_eq!(self.cols, x.dim());
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        let s = self.to_sparse();
        // Column-indexed pass over nonzeros.
        let mut cols: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
        for (r, c, v) in s.nonzeros() {
            cols.entry(c).or_default().push((r, v));
        }
        for (c, xv) in x.iter() {
            if let Some(col) = cols.get(c) {
                for (r, v) in col {
                    let e = acc.entry(*r).or_insert_with(Rat::zero);
                    *e += v * xv;
                }
            }
        }
        SparseVec::from_entries(self.rows, acc.into_iter().collect())
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let mut entries = Vec::new();
        for (r, cc, v) in self.nonzeros() {
            if cc == c {
                entries.push((r, v));
            }
        }
        SparseVec::from_entries(self.rows, entries)
    }

    pub fn eq_entrywise(&self, other: &Self) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        self.to_sparse().nonzeros() == other.to_sparse().nonzeros()
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    #[test]
    fn sparse_dense_agree() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(0), rat_int(3)],
        ]);
        let s = a.to_sparse();
        let d = s.to_dense();
        assert!(a.eq_entrywise(&s));
        assert!(a.eq_entrywise(&d));
        assert!(s.is_sparse() && !d.is_sparse());
    }

    #[test]
    fn product_is_exact() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat(1, 3), rat_int(2)],
            vec![rat_int(0), rat(5, 7)],
        ]);
        let id = ExactMatrix::identity(2);
        assert!(a.mul(&id).eq_entrywise(&a));
        let b = a.mul(&a);
        assert_eq!(b.get(0, 0), rat(1, 9));
        assert_eq!(b.get(0, 1), rat(1, 3) * rat_int(2) + rat_int(2) * rat(5, 7));
    }

    #[test]
    fn apply_matches_dense_product() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(4)],
        ]);
        let x = SparseVec::from_entries(3, vec![(1, rat_int(5)), (2, rat(1, 2))]);
        let y = a.apply(&x);
        assert_eq!(y.to_dense(), vec![rat_int(10), rat_int(2)]);
    }
}
