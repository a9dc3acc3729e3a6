//! Arbitrary-precision rationals and parsing/formatting helpers.
//!
//! `Rat` is always stored in lowest terms with a positive denominator
//! (guaranteed by `num_rational::Ratio`), so the two invariants of the
//! exact substrate hold by construction.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rat = num_rational::BigRational;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, integers, and plain decimal strings (`"0.25"`, `"-3e-2"`)
/// into an exact rational. Decimal strings are exact rationals by definition.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Malformed("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        return Ok(Rat::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rat> {
    let (mant, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Malformed(format!("bad exponent in {s:?}")))?;
            (m, e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::Malformed(format!("bad decimal {s:?}")))?;
    let scale = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rat::new(n, ten.pow(scale as u32))
    } else {
        Rat::from_integer(n * ten.pow((-scale) as u32))
    })
}

/// The reduced rational `x / 2^scale` without a gcd pass: the common factor
/// is exactly the trailing-zero count of x, so stripping it yields an odd
/// numerator coprime to the power-of-two denominator. BigRational's generic
/// reduction runs a binary gcd that is quadratically slow against huge
/// dyadic denominators; every hot path uses this constructor instead.
pub fn dyadic_rat(x: BigInt, scale: u64) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let tz = x.trailing_zeros().unwrap_or(0).min(scale);
    Rat::new_raw(x >> tz, BigInt::one() << (scale - tz))
}

/// Canonical `"p/q"` (or `"p"` for integers) representation.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for display and floating-point cross checks.
pub fn rat_to_f64(r: &Rat) -> f64 {
    // Scale into f64 range first so huge numerators don't overflow.
    let nb = r.numer().magnitude().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n = r.numer() >> shift;
    let d = r.denom() >> shift;
    let nf = bigint_to_f64(&n);
    let df = biguint_to_f64(d.magnitude());
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let m = biguint_to_f64(n.magnitude());
    if n.sign() == Sign::Minus {
        -m
    } else {
        m
    }
}

fn biguint_to_f64(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        u64::try_from(n).map(|v| v as f64).unwrap_or(f64::MAX)
    } else {
        let shift = bits - 53;
        let top = u64::try_from(&(n >> shift)).unwrap_or(u64::MAX);
        top as f64 * 2f64.powi(shift as i32)
    }
}

/// log2 of a rational as f64 (for reports; exact comparisons use integers).
pub fn rat_log2(r: &Rat) -> f64 {
    assert!(r.is_positive(), "log2 of non-positive rational");
    let nb = r.numer().magnitude().bits() as i64;
    let db = r.denom().bits() as i64;
    let n = rat_to_f64(&Rat::new(r.numer().clone(), BigInt::one() << (nb - 1).max(0)));
    let d = rat_to_f64(&Rat::new(r.denom().clone(), BigInt::one() << (db - 1).max(0)));
    (nb - 1) as f64 - (db - 1) as f64 + n.log2() - d.log2()
}

/// `ceil(log2(x))` for a positive integer, exactly.
pub fn ceil_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero());
    let bits = x.bits();
    if x.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// `floor(log2(k))` for a positive integer, exactly.
pub fn floor_log2_u64(k: u64) -> u32 {
    assert!(k >= 1);
    63 - k.leading_zeros()
}

/// Decimal string with `digits` significant fractional digits (round to
/// nearest, ties away from zero). Deterministic; used by the state files.
pub fn rat_to_decimal_string(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let ten_d = BigInt::from(10).pow(digits as u32);
    // round(a * 10^digits)
    let scaled: BigInt = (a.numer() * &ten_d * 2 + a.denom()) / (a.denom() * 2);
    let int_part: BigInt = &scaled / &ten_d;
    let frac_part: BigInt = &scaled % &ten_d;
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits);
    let frac_str = frac_str.trim_end_matches('0');
    let mut out = String::new();
    if neg && (!int_part.is_zero() || !frac_str.is_empty()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if !frac_str.is_empty() {
        out.push('.');
        out.push_str(frac_str);
    }
    out
}
