//! Sparse vectors with exact rational entries.
//!
//! Entries are stored as `(index, value)` pairs sorted by index with no
//! explicit zeros. The spanning vectors of the typical subspaces have at most
//! n! nonzero integer entries out of 4^(ln), so sparse storage is the only
//! workable representation.

use super::rational::Rat;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        Self {
            dim,
            entries: vec![(index, Rat::from_integer(1.into()))],
        }
    }

    /// From `(index, value)` pairs; sorts and drops zeros. Panics on
    /// duplicate indices or out-of-range indices.
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, Rat)>) -> Self {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate index {}", w[0].0);
        }
        if let Some((i, _)) = entries.last() {
            assert!(*i < dim, "index {i} out of range for dim {dim}");
        }
        Self { dim, entries }
    }

    pub fn from_dense(dense: &[Rat]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        Self {
            dim: dense.len(),
            entries,
        }
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rat)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Rat {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// First nonzero index, if any.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// Exact dot product (real inner product).
    pub fn dot(&self, other: &Self) -> Rat {
        assert_eq!(self.dim, other.dim, "dot on mismatched dims");
        let mut acc = Rat::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia == ib {
                        acc += va * vb;
                        a.next();
                        b.next();
                    } else if ia < ib {
                        a.next();
                    } else {
                        b.next();
                    }
                }
                _ => break,
            }
        }
        acc
    }

    pub fn norm2(&self) -> Rat {
        let mut acc = Rat::zero();
        for (_, v) in &self.entries {
            acc += v * v;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`, exact.
    pub fn add_scaled(&self, c: &Rat, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia == ib {
                        let v = va + &(c * vb);
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    } else if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else {
                        out.push((*ib, c * vb));
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.by_ref().cloned());
                    break;
                }
                (None, Some(_)) => {
                    for (i, v) in b.by_ref() {
                        out.push((*i, c * v));
                    }
                    break;
                }
                (None, None) => break,
            }
        }
        Self {
            dim: self.dim,
            entries: out,
        }
    }

    /// Tensor with a unit vector on a `pad_dim`-dimensional factor placed on
    /// the low-order side of the index (big-endian layout: this vector's index
    /// becomes the high bits).
    pub fn tensor_unit(&self, pad_dim: usize, pad_index: usize) -> Self {
        assert!(pad_index < pad_dim);
        Self {
            dim: self.dim * pad_dim,
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i * pad_dim + pad_index, v.clone()))
                .collect(),
        }
    }

    /// Clears denominators and common content: returns the parallel vector
    /// with coprime integer entries (sign of the leading entry preserved).
    pub fn primitive_integer(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.entries.is_empty() {
            return self.clone();
        }
        let mut den_lcm = num_bigint::BigInt::from(1);
        for (_, v) in &self.entries {
            den_lcm = den_lcm.lcm(v.denom());
        }
        let mut nums: Vec<(usize, BigInt)> = self
            .entries
            .iter()
            .map(|(i, v)| (*i, v.numer() * &den_lcm / v.denom()))
            .collect();
        let mut g = BigInt::from(0);
        for (_, n) in &nums {
            g = g.gcd(n);
        }
        for (_, n) in &mut nums {
            *n = &*n / &g;
        }
        Self {
            dim: self.dim,
            entries: nums
                .into_iter()
                .map(|(i, n)| (i, Rat::from_integer(n)))
                .collect(),
        }
    }
}
