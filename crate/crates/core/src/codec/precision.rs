//! Precision management: the digit-count formula, entrywise rounding of the
//! exact basis, re-orthonormalization at doubled precision, and the
//! exact-arithmetic certificates tying V back to U.

use crate::exact::bigfloat::{div_round_nearest, shr_round_nearest, BigFloat, FixedVec};
use crate::exact::rational::{ceil_log2, Rat};
use crate::exact::SurdBasis;
use crate::Result;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// The working digit count N = 1 + ceil(log2(2k * 2^m * (10 sqrt(2^m))^(2^m))),
/// evaluated exactly in integers: the argument equals
/// 2k * 2^m * 10^(2^m) * 2^(m 2^(m-1)).
pub fn compute_n_digits(k: u64, m: u32) -> u64 {
    assert!(k >= 1 && m >= 1);
    let pow = 1u64 << m; // 2^m
    let arg: BigUint = (BigUint::from(2u64) * k)
        * (BigUint::one() << m)
        * BigUint::from(10u64).pow(pow as u32)
        * (BigUint::one() << (m as u64 * (pow / 2)));
    1 + ceil_log2(&arg)
}

/// Rounds every interpreted entry b_ij / sqrt(s_j) of the exact basis to N
/// binary digits with a single square-root rounding per entry, so the
/// entrywise error is < 2^-N by construction. Columns share the scale N.
pub fn round_basis(basis: &SurdBasis, n_digits: u64) -> Vec<FixedVec> {
    let dim = basis.dim();
    basis
        .columns()
        .iter()
        .map(|c| {
            let mut col = FixedVec::zeros(dim, n_digits);
            for (i, b) in c.v.iter() {
                // |b| / sqrt(s) = sqrt(b^2 / s), then the sign of b.
                let radicand = (b * b) / &c.norm2;
                let root = BigFloat::sqrt_rat(&radicand, n_digits)
                    .expect("norm2 > 0")
                    .round_to(n_digits);
                debug_assert!(root.exponent() >= -(n_digits as i64));
                let shift = (root.exponent() + n_digits as i64) as u64;
                let mut man = root.mantissa() << shift;
                if b.is_negative() {
                    man = -man;
                }
                col.data[*i] = man;
            }
            col
        })
        .collect()
}

/// Modified Gram-Schmidt at fixed-point scale `scale` (2N digits). Columns
/// keep their sparsity pattern: disjoint supports never mix because their
/// inner products vanish identically.
pub fn unitarize(u_tilde: &[FixedVec], scale: u64) -> Vec<FixedVec> {
    let mut out: Vec<FixedVec> = Vec::with_capacity(u_tilde.len());
    for col in u_tilde {
        let lift = scale - col.scale;
        let mut w = FixedVec {
            scale,
            data: col.data.iter().map(|x| x << lift).collect(),
        };
        for prev in &out {
            let r = w.dot(prev); // scale `scale`
            if !r.is_zero() {
                w = w.sub_scaled(&r, prev);
            }
        }
        let norm2_raw = w.dot_raw(&w); // scale 2*scale
        let norm = norm2_raw.sqrt(); // scale `scale`
        out.push(w.div_scalar(&norm));
    }
    out
}

/// Exact-arithmetic certificates for one (plan, k) pair.
#[derive(Debug, Clone)]
pub struct PrecisionCert {
    /// max_ij |u~_ij - U_ij| < 2^-N, decided exactly entry by entry.
    pub entrywise_ok: bool,
    /// 2k * 2^m * (10 sqrt(2^m))^(2^m) < 2^N, the norm-chain inequality.
    pub norm_chain_ok: bool,
    /// Exact max entry modulus of V^T V - 1 (dyadic rational).
    pub vtv_defect: Rat,
    /// vtv_defect < 2^-(N-4): V certified unitary for the apply step.
    pub vtv_ok: bool,
    /// Exact max entry modulus of V - u~ (both dyadic).
    pub v_minus_utilde_max: Rat,
    /// Certified upper bound on ||V - U||_F^2 (hence on the operator norm
    /// squared), via rational square-root enclosures.
    pub v_minus_u_fro2_bound: Rat,
    /// v_minus_u_fro2_bound < 1/k^2, i.e. ||V - U|| < 1/k certified.
    pub v_minus_u_ok: bool,
}

impl PrecisionCert {
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "entrywise_ok": self.entrywise_ok,
            "norm_chain_ok": self.norm_chain_ok,
            "vtv_defect_log2": log2_rat(&self.vtv_defect),
            "v_minus_utilde_max_log2": log2_rat(&self.v_minus_utilde_max),
            "v_minus_u_norm_bound_log2": 0.5 * log2_rat(&self.v_minus_u_fro2_bound),
            "vtv_ok": self.vtv_ok,
            "v_minus_u_ok": self.v_minus_u_ok,
        })
    }
}

fn log2_rat(r: &Rat) -> f64 {
    if r.is_zero() {
        f64::NEG_INFINITY
    } else {
        crate::exact::rational::rat_log2(&r.abs())
    }
}

pub fn certify(
    basis: &SurdBasis,
    u_tilde: &[FixedVec],
    v: &[FixedVec],
    n_digits: u64,
    k: u64,
) -> Result<PrecisionCert> {
    let dim = basis.dim();
    let m = dim.trailing_zeros();
    // (1) Entrywise |u~ - U| < 2^-N. Basis columns are primitive integer
    // vectors, so each comparison b/sqrt(s) vs (man +- 1)/2^N reduces to a
    // pure integer comparison after squaring with sign analysis.
    let mut entrywise_ok = true;
    'outer: for (j, c) in basis.columns().iter().enumerate() {
        let col = &u_tilde[j];
        let s_int: BigInt = c.norm2.to_integer();
        debug_assert_eq!(Rat::from_integer(s_int.clone()), c.norm2);
        let lift = col.scale - n_digits; // 0 by construction, kept general
        let mut touched = vec![false; dim];
        // (man - 1)/2^N < b/sqrt(s) < (man + 1)/2^N, i.e.
        // (man - 1) sqrt(s) < b 2^N < (man + 1) sqrt(s).
        for (i, b) in c.v.iter() {
            touched[*i] = true;
            let b_int: BigInt = b.to_integer();
            let man = &col.data[*i] >> lift;
            let b2n: BigInt = &b_int << n_digits;
            if !(sqrt_times_lt_int(&(&man - 1), &s_int, &b2n)
                && int_lt_sqrt_times(&b2n, &s_int, &(&man + 1)))
            {
                entrywise_ok = false;
                break 'outer;
            }
        }
        for (i, x) in col.data.iter().enumerate() {
            if !touched[i] && !x.is_zero() {
                entrywise_ok = false;
                break 'outer;
            }
        }
    }
    // (2) Norm chain: arg < 2^N exactly.
    let pow = 1u64 << m;
    let arg: BigUint = (BigUint::from(2u64) * k)
        * (BigUint::one() << m)
        * BigUint::from(10u64).pow(pow as u32)
        * (BigUint::one() << (m as u64 * (pow / 2)));
    let norm_chain_ok = arg < (BigUint::one() << n_digits);
    // (3) V^T V defect, exact integers at scale 2*scale.
    let scale = v.first().map(|c| c.scale).unwrap_or(2 * n_digits);
    let one_raw = BigInt::one() << (2 * scale);
    let mut vtv_defect_raw = BigInt::zero();
    for (a, ca) in v.iter().enumerate() {
        for (b, cb) in v.iter().enumerate().skip(a) {
            let raw = ca.dot_raw(cb);
            let diff = if a == b { raw - &one_raw } else { raw };
            let d = diff.abs();
            if d > vtv_defect_raw {
                vtv_defect_raw = d;
            }
        }
    }
    // vtv_defect_raw / 2^(2 scale) < 2^-(N-4)
    let vtv_ok = vtv_defect_raw < (BigInt::one() << (2 * scale - (n_digits - 4)));
    let vtv_defect = crate::exact::rational::dyadic_rat(vtv_defect_raw, 2 * scale);
    // (4) max |V - u~| exact (both dyadic, shared scales).
    let mut vu_max_raw = BigInt::zero();
    let v_scale = scale;
    for (cu, cv) in u_tilde.iter().zip(v) {
        let lift = cv.scale - cu.scale;
        for (xu, xv) in cu.data.iter().zip(&cv.data) {
            let d = ((xu << lift) - xv).abs();
            if d > vu_max_raw {
                vu_max_raw = d;
            }
        }
    }
    let v_minus_utilde_max = crate::exact::rational::dyadic_rat(vu_max_raw, v_scale);
    // (5) ||V - U||_F^2 <= sum_j (<w,w> - 2 <w,b>/sqrt(s) + 1): outward-
    // rounded integer accumulation at scale fro_bits, with integer sqrt
    // enclosures sl <= sqrt(s) 2^P < sl + 1.
    let fro_bits: u64 = 128.min(2 * scale);
    let mut fro2_up = BigInt::zero(); // at scale fro_bits
    for (j, c) in basis.columns().iter().enumerate() {
        let w = &v[j];
        let ww_raw = w.dot_raw(w); // scale 2*scale
        fro2_up += ceil_shift(&ww_raw, 2 * scale - fro_bits) + (BigInt::one() << fro_bits);
        // wb at scale `scale` (b integer).
        let mut wb_raw = BigInt::zero();
        for (i, b) in c.v.iter() {
            if !w.data[*i].is_zero() {
                wb_raw += &w.data[*i] * b.to_integer();
            }
        }
        let s_int: BigInt = c.norm2.to_integer();
        let p = 2 * n_digits + 16;
        let sl = ((&s_int) << (2 * p)).sqrt(); // sl <= sqrt(s) 2^p < sl + 1
        // cross = -2 wb / sqrt(s); upper bound at scale fro_bits.
        // wb >= 0: cross <= -2 wb 2^p / (2^scale (sl + 1))
        // wb <  0: cross <= -2 wb 2^p / (2^scale sl)
        let denom_root: BigInt = if wb_raw.is_negative() {
            sl
        } else {
            sl + 1
        };
        let num = -(BigInt::from(2) * &wb_raw) << (p + fro_bits);
        let den = denom_root << scale;
        fro2_up += ceil_div(&num, &den);
    }
    if fro2_up.is_negative() {
        fro2_up = BigInt::zero();
    }
    // fro2_up / 2^fro_bits < 1/k^2
    let v_minus_u_ok = &fro2_up * BigInt::from(k) * BigInt::from(k) < (BigInt::one() << fro_bits);
    let fro2 = crate::exact::rational::dyadic_rat(fro2_up, fro_bits);
    Ok(PrecisionCert {
        entrywise_ok,
        norm_chain_ok,
        vtv_defect,
        vtv_ok,
        v_minus_utilde_max,
        v_minus_u_fro2_bound: fro2,
        v_minus_u_ok,
    })
}

/// x < sqrt(s) * y for integers with s >= 0, exact.
fn int_lt_sqrt_times(x: &BigInt, s: &BigInt, y: &BigInt) -> bool {
    match (x.is_negative(), y.is_negative()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => x * x < y * y * s,
        (true, true) => x * x > y * y * s,
    }
}

/// sqrt(s) * y < x for integers with s >= 0, exact.
fn sqrt_times_lt_int(y: &BigInt, s: &BigInt, x: &BigInt) -> bool {
    int_lt_sqrt_times(&(-x), s, &(-y))
}

/// ceil(x / 2^shift).
fn ceil_shift(x: &BigInt, shift: u64) -> BigInt {
    -((-x) >> shift)
}

/// ceil(a / b) for b > 0.
fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&(-a), b)
}

/// Applies the certified nearly unitary V (real fixed point) to a complex
/// vector at scale `scale`, normalizing the result; errors if the
/// certification does not meet the 2^-(N-4) unitarity threshold.
pub fn apply_unitary_approx(
    v: &[FixedVec],
    cert: &PrecisionCert,
    re: &[BigInt],
    im: &[BigInt],
    scale: u64,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if !cert.vtv_ok {
        return Err(crate::Error::CertificationFailed(format!(
            "V^T V defect {} exceeds the 2^-(N-4) threshold",
            cert.vtv_defect
        )));
    }
    let dim = v.first().map(|c| c.dim()).unwrap_or(0);
    let mut out_re = vec![BigInt::zero(); dim];
    let mut out_im = vec![BigInt::zero(); dim];
    for (j, col) in v.iter().enumerate() {
        debug_assert_eq!(col.scale, scale);
        if re[j].is_zero() && im[j].is_zero() {
            continue;
        }
        for (i, x) in col.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out_re[i] += x * &re[j];
            out_im[i] += x * &im[j];
        }
    }
    // Back to scale, then normalize.
    for x in out_re.iter_mut().chain(out_im.iter_mut()) {
        *x = shr_round_nearest(x, scale);
    }
    let mut norm2_raw = BigInt::zero();
    for x in out_re.iter().chain(out_im.iter()) {
        norm2_raw += x * x;
    }
    let norm = norm2_raw.sqrt(); // scale `scale`
    if norm.is_zero() {
        return Err(crate::Error::Malformed("zero output state".into()));
    }
    let one = BigInt::one() << scale;
    for x in out_re.iter_mut().chain(out_im.iter_mut()) {
        *x = div_round_nearest(&(&*x * &one), &norm);
    }
    Ok((out_re, out_im))
}
