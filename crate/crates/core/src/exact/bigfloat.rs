//! Arbitrary-precision binary floating point with explicit digit counts.
//!
//! A `BigFloat` is the exact dyadic rational `mantissa * 2^exponent`; rounding
//! happens only in the named constructors and in `round_to`/`div`/`sqrt`, each
//! of which takes an explicit digit count N and guarantees absolute error
//! < 2^-N. Addition, subtraction and multiplication are exact.

use super::rational::{rat_to_decimal_string, rat_to_f64, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Rounds `x / 2^shift` to the nearest integer (ties toward +infinity).
pub fn shr_round_nearest(x: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (shift - 1))) >> shift
}

/// Rounds `a / b` (b > 0) to the nearest integer (ties toward +infinity).
pub fn div_round_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    assert!(b.is_positive());
    num_integer::Integer::div_floor(&(a * 2 + b), &(b * 2))
}

#[derive(Debug, Clone)]
pub struct BigFloat {
    man: BigInt,
    exp: i64,
    /// Digit count requested at the most recent rounding step; exact
    /// operations propagate the minimum of their operands.
    prec: u64,
}

impl BigFloat {
    pub fn zero(prec: u64) -> Self {
        Self {
            man: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u64) -> Self {
        Self {
            man: BigInt::from(n),
            exp: 0,
            prec,
        }
        .normalized()
    }

    /// Exact dyadic value `man * 2^exp`.
    pub fn from_parts(man: BigInt, exp: i64, prec: u64) -> Self {
        Self { man, exp, prec }.normalized()
    }

    /// Nearest multiple of 2^-n; absolute error <= 2^-(n+1) < 2^-n.
    pub fn from_rat(r: &Rat, n: u64) -> Self {
        let man = div_round_nearest(&(r.numer() << n), r.denom());
        Self {
            man,
            exp: -(n as i64),
            prec: n,
        }
        .normalized()
    }

    /// sqrt of a nonnegative rational to n binary digits: |result - sqrt(r)| < 2^-n.
    pub fn sqrt_rat(r: &Rat, n: u64) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(r.to_string()));
        }
        // Two guard bits: isqrt(floor(r * 4^(n+2))) has error < 2 ulp at
        // scale 2^-(n+2), so the total error is < 2^-(n+1).
        let g = n + 2;
        let scaled = (r.numer() << (2 * g)) / r.denom();
        let root = scaled.sqrt();
        Ok(Self {
            man: root,
            exp: -(g as i64),
            prec: n,
        }
        .normalized())
    }

    fn normalized(mut self) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        if let Some(tz) = self.man.trailing_zeros() {
            if tz > 0 {
                self.man >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn precision_digits(&self) -> u64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.man << self.exp as u64)
        } else {
            Rat::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.to_rat())
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        rat_to_decimal_string(&self.to_rat(), digits)
    }

    pub fn abs(&self) -> Self {
        Self {
            man: self.man.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            man: -&self.man,
            exp: self.exp,
            prec: self.prec,
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let exp = self.exp.min(other.exp);
        let a = &self.man << (self.exp - exp) as u64;
        let b = &other.man << (other.exp - exp) as u64;
        (a, b, exp)
    }

    /// Exact addition.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Self {
            man: a + b,
            exp,
            prec: self.prec.min(other.prec),
        }
        .normalized()
    }

    /// Exact subtraction.
    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Self {
            man: a - b,
            exp,
            prec: self.prec.min(other.prec),
        }
        .normalized()
    }

    /// Exact multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
            prec: self.prec.min(other.prec),
        }
        .normalized()
    }

    /// Rounds to the nearest multiple of 2^-n (error <= 2^-(n+1)).
    pub fn round_to(&self, n: u64) -> Self {
        let target = -(n as i64);
        if self.exp >= target {
            let mut out = self.clone();
            out.prec = n;
            return out;
        }
        let shift = (target - self.exp) as u64;
        Self {
            man: shr_round_nearest(&self.man, shift),
            exp: target,
            prec: n,
        }
        .normalized()
    }

    /// Quotient rounded to n binary digits; |result - a/b| <= 2^-(n+1).
    pub fn div(&self, other: &Self, n: u64) -> Self {
        assert!(!other.is_zero(), "division by zero BigFloat");
        let num = &self.man;
        let den = &other.man;
        let shift = n as i64 + self.exp - other.exp;
        let (num_sh, den_sh): (BigInt, BigInt) = if shift >= 0 {
            (num << shift as u64, den.clone())
        } else {
            (num.clone(), den << (-shift) as u64)
        };
        let (num_sh, den_sh) = if den_sh.is_negative() {
            (-num_sh, -den_sh)
        } else {
            (num_sh, den_sh)
        };
        Self {
            man: div_round_nearest(&num_sh, &den_sh),
            exp: -(n as i64),
            prec: n,
        }
        .normalized()
    }

    /// Square root to n binary digits; errors on negative values.
    pub fn sqrt(&self, n: u64) -> Result<Self> {
        Self::sqrt_rat(&self.to_rat(), n)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

/// A rational or the square root of a nonnegative rational: the two kinds of
/// number the decompression algorithm rounds to N digits.
#[derive(Debug, Clone)]
pub enum Radicand {
    Rational(Rat),
    SqrtRational(Rat),
}

/// Rounds `x` to N binary digits with absolute error < 2^-N.
pub fn to_bigfloat(x: &Radicand, n: u64) -> Result<BigFloat> {
    assert!(n >= 1, "digit count must be at least 1");
    match x {
        Radicand::Rational(r) => Ok(BigFloat::from_rat(r, n)),
        Radicand::SqrtRational(r) => BigFloat::sqrt_rat(r, n),
    }
}

/// Real vector in fixed-point representation: entry i is data[i] * 2^-scale.
/// This is the shared-exponent layout used for the rounded basis matrices.
#[derive(Debug, Clone)]
pub struct FixedVec {
    pub scale: u64,
    pub data: Vec<BigInt>,
}

impl FixedVec {
    pub fn zeros(dim: usize, scale: u64) -> Self {
        Self {
            scale,
            data: vec![BigInt::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entry(&self, i: usize) -> BigFloat {
        BigFloat::from_parts(self.data[i].clone(), -(self.scale as i64), self.scale)
    }

    pub fn entry_rat(&self, i: usize) -> Rat {
        super::rational::dyadic_rat(self.data[i].clone(), self.scale)
    }

    /// Exact dot product as an integer at scale 2*scale.
    pub fn dot_raw(&self, other: &Self) -> BigInt {
        assert_eq!(self.scale, other.scale);
        assert_eq!(self.data.len(), other.data.len());
        let mut acc = BigInt::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Dot product rounded back to the common scale.
    pub fn dot(&self, other: &Self) -> BigInt {
        shr_round_nearest(&self.dot_raw(other), self.scale)
    }

    /// self - q * other at the common scale, where q is at the common scale.
    pub fn sub_scaled(&self, q: &BigInt, other: &Self) -> Self {
        assert_eq!(self.scale, other.scale);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - shr_round_nearest(&(q * b), self.scale))
            .collect();
        Self {
            scale: self.scale,
            data,
        }
    }

    /// Entry-wise quotient by a scalar at the common scale.
    pub fn div_scalar(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero());
        let one = BigInt::one() << self.scale;
        let data = self
            .data
            .iter()
            .map(|a| {
                let num = a * &one;
                let (num, den) = if d.is_negative() {
                    (-num, -d.clone())
                } else {
                    (num, d.clone())
                };
                div_round_nearest(&num, &den)
            })
            .collect();
        Self {
            scale: self.scale,
            data,
        }
    }
}
