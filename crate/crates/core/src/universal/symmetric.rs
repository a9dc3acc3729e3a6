//! The symmetric-subspace operator basis {A_k} and its action on codewords.
//!
//! Each basis element is indexed by a multiset {i_1,...,i_n} of matrix units
//! of the l-qubit site algebra and equals the sum of the distinct permuted
//! elementary tensors (repeated indices are not double counted, so all
//! entries are 0 or 1). A_k applied to a computational codeword vector is
//! computed combinatorially without materializing the 4^(ln) table.

use crate::exact::rational::Rat;
use crate::exact::{ExactMatrix, SparseVec};
use crate::{Error, Result};
use num_traits::One;

/// Materialized basis (within budget l=1: n <= 10, l=2: n <= 3), one sparse
/// 0/1 matrix per multiset.
#[derive(Debug)]
pub struct SymmetricBasis {
    pub l: u32,
    pub n: u32,
    pub matrices: Vec<ExactMatrix>,
}

/// dim SYM^n over the l-qubit site algebra: binomial(n + 4^l - 1, 4^l - 1).
pub fn symmetric_dimension(l: u32, n: u32) -> u128 {
    let a = (1u128 << (2 * l)) - 1;
    binomial(n as u128 + a, a)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multisets of size n over 0..alphabet-1 as non-decreasing index vectors,
/// in lexicographic order. This is the basis (and scan) order everywhere.
pub fn multisets(alphabet: usize, n: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n as usize);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, alphabet: usize, left: u32) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..alphabet {
            cur.push(s);
            rec(out, cur, s, alphabet, left - 1);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, alphabet, n);
    out
}

/// Distinct permutations of a multiset given as a sorted vector.
fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items = sorted.to_vec();
    let mut cur = Vec::with_capacity(items.len());
    fn rec(items: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut last: Option<usize> = None;
        for idx in 0..items.len() {
            let v = items[idx];
            if last == Some(v) {
                continue;
            }
            last = Some(v);
            items.remove(idx);
            cur.push(v);
            rec(items, cur, out);
            cur.pop();
            items.insert(idx, v);
        }
    }
    rec(&mut items, &mut cur, &mut out);
    out
}

impl SymmetricBasis {
    pub fn build(l: u32, n: u32) -> Result<Self> {
        let within_budget = match l {
            1 => n <= 10,
            2 => n <= 3,
            _ => false,
        };
        if !within_budget {
            return Err(Error::BudgetExceeded(format!(
                "symmetric basis budget: l={l}, n={n}"
            )));
        }
        let site_dim = 1usize << l; // 2^l
        let units = site_dim * site_dim; // 4^l matrix units
        let dim = site_dim.pow(n); // 2^(ln)
        let mut matrices = Vec::new();
        for ms in multisets(units, n) {
            let mut triplets = Vec::new();
            for arr in distinct_permutations(&ms) {
                // unit s = a * 2^l + b encodes |a><b| on the site.
                let mut row = 0usize;
                let mut col = 0usize;
                for s in arr {
                    row = row * site_dim + s / site_dim;
                    col = col * site_dim + s % site_dim;
                }
                triplets.push((row, col, Rat::one()));
            }
            matrices.push(ExactMatrix::from_triplets(dim, dim, triplets));
        }
        Ok(Self { l, n, matrices })
    }

    pub fn count(&self) -> usize {
        self.matrices.len()
    }
}

/// A_k |omega> without materializing A_k: the support is the set of strings
/// obtained by distributing, for every super-symbol value v of omega, the
/// a-parts of the units with b-part v over the positions carrying v. All
/// nonzero entries are 1.
pub fn unit_action(multiset: &[usize], l: u32, n: u32, word: u64) -> SparseVec {
    let site_dim = 1usize << l;
    let dim = site_dim.pow(n);
    // Positions of each super-symbol value in the word (big-endian blocks).
    let mask = (1u64 << l) - 1;
    let mut positions: Vec<Vec<u32>> = vec![Vec::new(); site_dim];
    for i in 0..n {
        let sym = ((word >> (l * (n - 1 - i))) & mask) as usize;
        positions[sym].push(i);
    }
    // Split the multiset by b-part; check the per-value counts fit.
    let mut a_parts: Vec<Vec<usize>> = vec![Vec::new(); site_dim];
    for &s in multiset {
        a_parts[s % site_dim].push(s / site_dim);
    }
    for v in 0..site_dim {
        if a_parts[v].len() != positions[v].len() {
            return SparseVec::zero(dim);
        }
        a_parts[v].sort_unstable();
    }
    // Cartesian product of distinct per-value arrangements.
    let mut assignments: Vec<Vec<(u32, usize)>> = vec![Vec::new()];
    for v in 0..site_dim {
        if positions[v].is_empty() {
            continue;
        }
        let perms = distinct_permutations(&a_parts[v]);
        let mut next = Vec::with_capacity(assignments.len() * perms.len());
        for base in &assignments {
            for perm in &perms {
                let mut ext = base.clone();
                for (pos, a) in positions[v].iter().zip(perm) {
                    ext.push((*pos, *a));
                }
                next.push(ext);
            }
        }
        assignments = next;
    }
    let mut entries = Vec::with_capacity(assignments.len());
    for asg in assignments {
        let mut site_vals = vec![0usize; n as usize];
        for (pos, a) in asg {
            site_vals[pos as usize] = a;
        }
        let mut idx = 0usize;
        for a in site_vals {
            idx = idx * site_dim + a;
        }
        entries.push((idx, Rat::one()));
    }
    SparseVec::from_entries(dim, entries)
}
