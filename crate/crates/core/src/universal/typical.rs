//! The universal typical projectors W_{l,R}^(ln) and Q_{s,eps}^(m).

use super::codebook::Codebook;
use super::symmetric::{multisets, symmetric_dimension, unit_action};
use crate::exact::rational::{parse_rat, rat_to_string, Rat};
use crate::exact::{gram_schmidt_exact, SpanBasis, SparseVec, SurdBasis};
use crate::source::SourceModel;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// The block size l_m: the unique power of 2 with
/// l * 2^(3l) <= m < 2 * l * 2^(6l). Errors for m < 8.
pub fn lm_for(m: u64) -> Result<u32> {
    if m < 8 {
        return Err(Error::NoBlockLength(m));
    }
    let mut l: u32 = 1;
    loop {
        let lo = (l as u128) << (3 * l);
        if (m as u128) < lo {
            // Powers of two tile [8, inf) contiguously, so no solution here
            // means the schedule was skipped past; cannot happen for m >= 8.
            return Err(Error::NoBlockLength(m));
        }
        // Only reachable while m >= lo, which bounds l <= 16 for u64 inputs,
        // so the shift below cannot overflow u128.
        let hi = (2 * (l as u128)) << (6 * l);
        if (m as u128) < hi {
            return Ok(l);
        }
        l = l.checked_mul(2).ok_or(Error::NoBlockLength(m))?;
    }
}

/// A universal typical projector with its construction metadata.
#[derive(Debug, Clone)]
pub struct TypicalProjector {
    /// Total qubit count (l*n plus padding).
    pub m: u32,
    pub l: u32,
    pub n: u32,
    /// Code rate R (bits per super-symbol).
    pub rate: Rat,
    /// r = s + eps metadata when built through build_q.
    pub r: Option<Rat>,
    /// Independent spanning vectors in (k, i) scan order, padding applied.
    pub spanning: Vec<SparseVec>,
    /// Exactly orthonormal columns spanning the support.
    pub basis: SurdBasis,
    /// Padding qubits m - l*n.
    pub padding: u32,
}

impl TypicalProjector {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Exact finite-size trace bound from the dimension estimate:
    /// rank <= (n+1)^(2^(2l)) * 2^(Rn) * 2^padding, decided in integers.
    pub fn trace_bound_holds(&self) -> bool {
        let b = self.rate.denom().to_u32().expect("rate denominator fits");
        let a = self.rate.numer();
        let exp = a * num_bigint::BigInt::from(self.n);
        let rank_pow = BigUint::from(self.rank()).pow(b);
        let poly = BigUint::from(self.n as u64 + 1)
            .pow(1u32 << (2 * self.l))
            .pow(b);
        let pad = BigUint::one() << (self.padding as u64 * b as u64);
        if exp.is_negative() {
            return self.rank() == 0;
        }
        let two_rn = BigUint::one() << exp.to_u64().expect("exponent fits");
        rank_pow <= poly * two_rn.pow(1) * pad
    }

    /// log2 of the finite-size bound (for reports).
    pub fn trace_bound_log2(&self) -> f64 {
        (1u64 << (2 * self.l)) as f64 * ((self.n + 1) as f64).log2()
            + crate::exact::rational::rat_to_f64(&self.rate) * self.n as f64
            + self.padding as f64
    }

    /// Tensors with the identity on `pad` further qubits: rank gains exactly
    /// the factor 2^pad.
    pub fn with_padding(&self, pad: u32) -> Self {
        if pad == 0 {
            return self.clone();
        }
        let pad_dim = 1usize << pad;
        let spanning = self
            .spanning
            .iter()
            .flat_map(|u| (0..pad_dim).map(move |b| u.tensor_unit(pad_dim, b)))
            .collect();
        Self {
            m: self.m + pad,
            l: self.l,
            n: self.n,
            rate: self.rate.clone(),
            r: self.r.clone(),
            spanning,
            basis: self.basis.tensor_identity(pad),
            padding: self.padding + pad,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let columns: Vec<serde_json::Value> = self
            .basis
            .columns()
            .iter()
            .map(|c| {
                serde_json::json!({
                    "v": c.v.to_dense().iter().map(rat_to_string).collect::<Vec<_>>(),
                    "norm2": rat_to_string(&c.norm2),
                })
            })
            .collect();
        serde_json::json!({
            "m": self.m,
            "l": self.l,
            "n": self.n,
            "R_num": self.rate.numer().to_string(),
            "R_den": self.rate.denom().to_string(),
            "rank": self.rank(),
            "columns": columns,
            "padding": self.padding,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Serialize, Deserialize)]
        struct Col {
            v: Vec<String>,
            norm2: String,
        }
        #[derive(Serialize, Deserialize)]
        struct Raw {
            m: u32,
            l: u32,
            n: u32,
            #[serde(rename = "R_num")]
            r_num: String,
            #[serde(rename = "R_den")]
            r_den: String,
            rank: usize,
            columns: Vec<Col>,
            padding: u32,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let rate = Rat::new(
            raw.r_num
                .parse()
                .map_err(|_| Error::Malformed("bad R_num".into()))?,
            raw.r_den
                .parse()
                .map_err(|_| Error::Malformed("bad R_den".into()))?,
        );
        let dim = 1usize << raw.m;
        let mut cols = Vec::with_capacity(raw.columns.len());
        for c in &raw.columns {
            if c.v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.v.len(),
                });
            }
            let dense: Result<Vec<Rat>> = c.v.iter().map(|s| parse_rat(s)).collect();
            let v = SparseVec::from_dense(&dense?);
            let norm2 = parse_rat(&c.norm2)?;
            if v.norm2() != norm2 {
                return Err(Error::Malformed("norm2 does not match column".into()));
            }
            cols.push(crate::exact::SurdColumn { v, norm2 });
        }
        let basis = SurdBasis::new(dim, cols);
        if raw.rank != basis.len() {
            return Err(Error::Malformed("rank does not match columns".into()));
        }
        let spanning = basis.columns().iter().map(|c| c.v.clone()).collect();
        Ok(Self {
            m: raw.m,
            l: raw.l,
            n: raw.n,
            rate,
            r: None,
            spanning,
            basis,
            padding: raw.padding,
        })
    }
}

/// Builds W_{l,R}^(ln): scans the spanning candidates A_k |omega_i> in
/// (k, i) lexicographic order, keeps an exactly independent subset, and
/// orthonormalizes it. An empty codebook yields the zero projector.
pub fn build_w(l: u32, n: u32, rate: &Rat) -> Result<TypicalProjector> {
    if symmetric_dimension(l, n) > 100_000 {
        return Err(Error::BudgetExceeded(format!(
            "symmetric dimension {} too large at l={l}, n={n}",
            symmetric_dimension(l, n)
        )));
    }
    let codebook = Codebook::build(l, n, rate)?;
    let dim_bits = l * n;
    let dim = 1usize << dim_bits;
    let mut span = SpanBasis::new(dim);
    if !codebook.is_empty() {
        let d = symmetric_dimension(l, n);
        let full = BigUint::from(dim);
        for ms in multisets(1usize << (2 * l), n) {
            // The span cannot exceed the full space; stop early when closed.
            if BigUint::from(span.rank()) == full {
                break;
            }
            for &w in codebook.words() {
                let u = unit_action(&ms, l, n, w);
                if !u.is_zero() {
                    span.insert(&u)?;
                }
            }
        }
        debug_assert!(BigUint::from(span.rank() as u64) <= BigUint::from(d) * codebook.len());
    }
    let spanning: Vec<SparseVec> = span.members().to_vec();
    let basis = gram_schmidt_exact(&spanning)?;
    Ok(TypicalProjector {
        m: dim_bits,
        l,
        n,
        rate: rate.clone(),
        r: None,
        spanning,
        basis,
        padding: 0,
    })
}

/// Builds Q_{s,eps}^(m) = W_{l_m, R_m}^(l_m n_m) (x) 1^(m - l_m n_m) with
/// l_m from the block schedule, n_m = floor(m / l_m) and R_m = l_m (s + eps/2).
pub fn build_q(s: &Rat, eps: &Rat, m: u32) -> Result<TypicalProjector> {
    if m > 16 {
        return Err(Error::BudgetExceeded(format!(
            "build_q budget is m <= 16, got {m}"
        )));
    }
    let l = lm_for(m as u64)?;
    let n = m / l;
    let rate = Rat::from_integer(l.into()) * (s + eps / Rat::from_integer(2.into()));
    let w = build_w(l, n, &rate)?;
    let pad = m - l * n;
    let mut q = w.with_padding(pad);
    q.r = Some(s + eps);
    Ok(q)
}

/// Tr(rho^(m) P), evaluated column-by-column against the source model.
pub fn typicality(model: &SourceModel, p: &TypicalProjector) -> f64 {
    let m = p.m;
    p.basis
        .columns()
        .iter()
        .map(|c| {
            model.quadratic_form(&c.v, m) / crate::exact::rational::rat_to_f64(&c.norm2)
        })
        .sum()
}
