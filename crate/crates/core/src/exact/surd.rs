//! Exact comparisons involving square roots of rationals.
//!
//! The orthonormalized basis entries are b/sqrt(s) with b, s rational; the
//! precision certificates need exact decisions like "is b/sqrt(s) inside this
//! rational interval" without ever leaving the rationals.

use super::rational::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Compares sqrt(s) with a rational c, exactly. Requires s >= 0.
pub fn cmp_sqrt_rat(s: &Rat, c: &Rat) -> Ordering {
    assert!(!s.is_negative(), "negative radicand");
    if c.is_negative() {
        return Ordering::Greater;
    }
    (s).cmp(&(c * c))
}

/// Decides |b/sqrt(s) - a| < t exactly, for rational a, b, t and s > 0.
pub fn surd_ratio_in_interval(b: &Rat, s: &Rat, a: &Rat, t: &Rat) -> bool {
    assert!(s.is_positive(), "radicand must be positive");
    assert!(t.is_positive());
    // b/sqrt(s) in (a-t, a+t)  <=>  b in (sqrt(s)(a-t), sqrt(s)(a+t)).
    // Compare b with sqrt(s)*c by sign analysis and squaring.
    let lo = a - t;
    let hi = a + t;
    gt_sqrt_times(b, s, &lo) && lt_sqrt_times(b, s, &hi)
}

/// b > sqrt(s) * c, exactly.
fn gt_sqrt_times(b: &Rat, s: &Rat, c: &Rat) -> bool {
    match (b.is_negative(), c.is_negative()) {
        (false, true) => true,
        (true, false) => false,
        (false, false) => b * b > c * c * s,
        (true, true) => b * b < c * c * s,
    }
}

/// b < sqrt(s) * c, exactly.
fn lt_sqrt_times(b: &Rat, s: &Rat, c: &Rat) -> bool {
    !gt_sqrt_times(b, s, c) && b * b != c * c * s
}

/// Rational enclosure lo <= sqrt(s) <= hi with hi - lo <= 2^-(bits-1).
pub fn sqrt_enclosure(s: &Rat, bits: u64) -> (Rat, Rat) {
    assert!(!s.is_negative());
    if s.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let scaled = (s.numer() << (2 * bits)) / s.denom();
    let root = num_integer::Roots::sqrt(&scaled);
    let den = BigInt::one() << bits;
    let lo = Rat::new(root.clone(), den.clone());
    let hi = Rat::new(root + 2, den);
    (lo, hi)
}
