//! The decompression plan: the exact construction (steps 1-9) shared by the
//! compressor and decompressor, plus the per-accuracy precision data.

use super::precision::{certify, compute_n_digits, round_basis, unitarize, PrecisionCert};
use crate::exact::bigfloat::FixedVec;
use crate::exact::rational::Rat;
use crate::exact::{gram_schmidt_exact, SpanBasis, SparseVec, SurdBasis};
use crate::universal::typical::{build_w, lm_for, TypicalProjector};
use crate::{Error, Result};
use num_traits::Signed;
use std::sync::Arc;

/// Full-plan budget: the completion and exact Gram-Schmidt run on all 2^m
/// basis vectors.
pub const MAX_PLAN_QUBITS: u32 = 10;

/// Steps 1-9: block schedule, codebook, spanning set, padding, completion
/// against the computational basis, exact Gram-Schmidt.
#[derive(Debug)]
pub struct ExactPlan {
    pub m: u32,
    pub r: Rat,
    pub l: u32,
    pub n: u32,
    /// The code rate R = l * r used by the plan's codebook.
    pub rate: Rat,
    /// The spanning projector (supp of the plan subspace), padding applied.
    pub projector: TypicalProjector,
    /// Exactly orthonormal basis of the whole 2^m space; the first
    /// d_tilde columns span the plan subspace.
    pub basis: SurdBasis,
    /// Rank of the plan subspace.
    pub d_tilde: usize,
}

impl ExactPlan {
    pub fn build(m: u32, r: &Rat) -> Result<Self> {
        if m > MAX_PLAN_QUBITS {
            return Err(Error::BudgetExceeded(format!(
                "plan at m = {m} exceeds budget {MAX_PLAN_QUBITS}"
            )));
        }
        if !r.is_positive() || r > &Rat::from_integer(2.into()) {
            return Err(Error::InvalidParameter(format!(
                "r must be a rational in (0, 2], got {r}"
            )));
        }
        // Steps 1-3: block schedule and R = l*r.
        let l = lm_for(m as u64)?;
        let n = m / l;
        let rate = Rat::from_integer(l.into()) * r;
        // Steps 4-6: codebook, symmetric action, exact independence filter.
        let w = build_w(l, n, &rate)?;
        // Step 7: padding combinations (no-op whenever l divides m).
        let projector = w.with_padding(m - l * n);
        let d_tilde = projector.rank();
        if d_tilde == 0 {
            return Err(Error::ZeroRank);
        }
        // Step 8: complete with computational basis vectors, discarding the
        // earliest dependent candidates.
        let dim = 1usize << m;
        let mut span = SpanBasis::new(dim);
        for u in &projector.spanning {
            let fresh = span.insert(u)?;
            debug_assert!(fresh, "spanning set must be independent");
        }
        for x in 0..dim {
            if span.rank() == dim {
                break;
            }
            span.insert(&SparseVec::unit(dim, x))?;
        }
        debug_assert_eq!(span.rank(), dim);
        // Step 9: exact Gram-Schmidt over the surviving sequence.
        let basis = gram_schmidt_exact(span.members())?;
        Ok(Self {
            m,
            r: r.clone(),
            l,
            n,
            rate,
            projector,
            basis,
            d_tilde,
        })
    }

    /// Compressed payload length l(q~) = ceil(log2 D~).
    pub fn payload_qubits(&self) -> u32 {
        let d = self.d_tilde as u64;
        crate::exact::rational::ceil_log2(&d.into()) as u32
    }

    /// ceil(m * r): the asymptotic payload length reported alongside.
    pub fn ceil_mr(&self) -> u64 {
        let mr = &self.r * Rat::from_integer(self.m.into());
        let fl = mr.numer() / mr.denom();
        let fl_u = u64::try_from(fl.magnitude()).expect("small");
        if Rat::from_integer(fl) == mr {
            fl_u
        } else {
            fl_u + 1
        }
    }
}

/// An exact plan with its rounded and unitarized matrices for a given
/// accuracy parameter k. Plans are immutable and shareable.
#[derive(Debug)]
pub struct DecompressionPlan {
    pub exact: Arc<ExactPlan>,
    pub k: u64,
    /// Step-10 digit count N (possibly overridden).
    pub n_digits: u64,
    /// Whether n_digits came from the exact step-10 formula.
    pub exact_n: bool,
    /// Columns of U rounded to N binary digits (scale N fixed point).
    pub u_tilde: Vec<FixedVec>,
    /// Unitarized columns at scale 2N.
    pub v: Vec<FixedVec>,
    pub cert: PrecisionCert,
}

/// Steps 1-12 preparation: exact plan, digit count, rounding, unitarization
/// and the precision certificates. `precision_override` replaces the step-10
/// N for profiling; the contract certificates are still evaluated.
pub fn build_plan(
    k: u64,
    m: u32,
    r: &Rat,
    precision_override: Option<u64>,
) -> Result<DecompressionPlan> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let exact = Arc::new(ExactPlan::build(m, r)?);
    build_precision(exact, k, precision_override)
}

/// Precision stage on a shared exact plan.
pub fn build_precision(
    exact: Arc<ExactPlan>,
    k: u64,
    precision_override: Option<u64>,
) -> Result<DecompressionPlan> {
    let formula_n = compute_n_digits(k, exact.m);
    let n_digits = precision_override.unwrap_or(formula_n);
    if n_digits < 16 {
        return Err(Error::InvalidParameter(format!(
            "precision override {n_digits} below the minimum of 16 digits"
        )));
    }
    let u_tilde = round_basis(&exact.basis, n_digits);
    let v = unitarize(&u_tilde, 2 * n_digits);
    let cert = certify(&exact.basis, &u_tilde, &v, n_digits, k)?;
    Ok(DecompressionPlan {
        exact,
        k,
        n_digits,
        exact_n: precision_override.is_none(),
        u_tilde,
        v,
        cert,
    })
}
