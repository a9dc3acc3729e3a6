//! Universal classical block codes over super-symbols.
//!
//! The code at block size l, super-symbol count n and rate R admits exactly
//! the strings whose empirical super-symbol distribution T satisfies
//! H(T) <= R - 2^l * log2(n+1) / n. Membership depends on (l, n, R) only, and
//! the cardinality bound |Omega| <= 2^(nR) follows by counting type classes.
//!
//! The threshold comparison is done exactly in integers: with R = a/b,
//! H(T) <= R - 2^l log2(n+1)/n is equivalent to
//!        (n^n * (n+1)^(2^l))^b <= 2^(n*a) * (prod_v c_v^c_v)^b.

use crate::exact::rational::{rat_to_f64, Rat};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;

/// Enumeration budget: at most 2^24 strings.
pub const MAX_TOTAL_BITS: u32 = 24;

#[derive(Debug, Clone)]
pub struct Codebook {
    l: u32,
    n: u32,
    rate: Rat,
    /// Codewords as l*n-bit integers (big-endian bit layout), ascending.
    words: Vec<u64>,
}

impl Codebook {
    /// Enumerates the codebook for (l, n, R).
    pub fn build(l: u32, n: u32, rate: &Rat) -> Result<Self> {
        if l == 0 || n == 0 {
            return Err(Error::InvalidParameter("l and n must be positive".into()));
        }
        let total_bits = l * n;
        if total_bits > MAX_TOTAL_BITS {
            return Err(Error::BudgetExceeded(format!(
                "l*n = {total_bits} exceeds {MAX_TOTAL_BITS}"
            )));
        }
        let alphabet = 1usize << l;
        let mut admitted: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
        let mut words = Vec::new();
        for w in 0..(1u64 << total_bits) {
            let counts = super_symbol_counts(w, l, n, alphabet);
            let ok = *admitted
                .entry(counts.clone())
                .or_insert_with(|| type_admitted(&counts, l, n, rate));
            if ok {
                words.push(w);
            }
        }
        Ok(Self {
            l,
            n,
            rate: rate.clone(),
            words,
        })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rate(&self) -> &Rat {
        &self.rate
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Membership from (l, n, R) alone.
    pub fn contains(&self, word: u64) -> bool {
        let counts = super_symbol_counts(word, self.l, self.n, 1 << self.l);
        type_admitted(&counts, self.l, self.n, &self.rate)
    }

    /// Exact check of |Omega| <= 2^(nR) by integer comparison.
    pub fn cardinality_bound_holds(&self) -> bool {
        let a = self.rate.numer();
        let b = self
            .rate
            .denom()
            .to_u32()
            .expect("rate denominator fits u32");
        let count = BigUint::from(self.words.len());
        let n_a = a * BigInt::from(self.n);
        if n_a.is_negative() {
            return self.words.is_empty();
        }
        let lhs = count.pow(b);
        let rhs = BigUint::one() << n_a.to_u64().expect("exponent fits u64");
        lhs <= rhs
    }

    /// Empirical super-symbol entropy of a word, in bits (for reports).
    pub fn empirical_entropy(&self, word: u64) -> f64 {
        let counts = super_symbol_counts(word, self.l, self.n, 1 << self.l);
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / self.n as f64;
                -p * p.log2()
            })
            .sum()
    }

    /// The admission threshold R - 2^l log2(n+1)/n (for reports).
    pub fn threshold(&self) -> f64 {
        rat_to_f64(&self.rate)
            - (1u64 << self.l) as f64 * ((self.n + 1) as f64).log2() / self.n as f64
    }
}

/// Super-symbol counts of an l*n-bit word (big-endian blocks of l bits).
pub fn super_symbol_counts(word: u64, l: u32, n: u32, alphabet: usize) -> Vec<u32> {
    let mut counts = vec![0u32; alphabet];
    let mask = (1u64 << l) - 1;
    for i in 0..n {
        let shift = l * (n - 1 - i);
        let sym = ((word >> shift) & mask) as usize;
        counts[sym] += 1;
    }
    counts
}

/// Exact decision H(T) <= R - 2^l log2(n+1)/n for the type with the given
/// counts (sum = n).
pub fn type_admitted(counts: &[u32], l: u32, n: u32, rate: &Rat) -> bool {
    let a = rate.numer();
    let b = rate
        .denom()
        .to_u32()
        .expect("rate denominator fits u32");
    // LHS exponent side: (n^n * (n+1)^(2^l))^b  <=  2^(n*a) * (prod c^c)^b
    let nn = BigUint::from(n).pow(n);
    let np1 = BigUint::from(n + 1).pow(1u32 << l);
    let lhs = (nn * np1).pow(b);
    let mut prod = BigUint::one();
    for &c in counts {
        if c > 0 {
            prod *= BigUint::from(c).pow(c);
        }
    }
    let prod_b = prod.pow(b);
    let n_a = a * BigInt::from(n);
    if n_a.is_negative() {
        // lhs * 2^(n*|a|) <= prod^b
        let shift = (-&n_a).to_u64().expect("exponent fits u64");
        (lhs << shift) <= prod_b
    } else {
        let shift = n_a.to_u64().expect("exponent fits u64");
        lhs <= prod_b << shift
    }
}
