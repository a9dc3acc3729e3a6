//! The counting-argument bound: no more than 2^(c + 1 + (2+d)/(1-2d) d c)
//! mutually orthogonal pure states can be reproduced within accuracy d by
//! programs of length at most c.

use crate::exact::rational::{rat_to_f64, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct CountingBound {
    /// c + 1 + ((2 + delta) / (1 - 2 delta)) * delta * c.
    pub value: f64,
    /// c >= (2/delta)(2 + log2(1/delta)); the lemma asserts the bound only
    /// here. A violated precondition is flagged, not an error.
    pub precondition_met: bool,
}

/// Validates 0 < delta < 1/e and evaluates the bound.
pub fn counting_bound(c: u64, delta: f64) -> Result<CountingBound> {
    if !(delta > 0.0 && delta < 1.0 / std::f64::consts::E) {
        return Err(Error::InvalidParameter(format!(
            "delta must be in (0, 1/e), got {delta}"
        )));
    }
    let value = c as f64 + 1.0 + (2.0 + delta) / (1.0 - 2.0 * delta) * delta * c as f64;
    let precondition_met = c as f64 >= 2.0 / delta * (2.0 + (1.0 / delta).log2());
    Ok(CountingBound {
        value,
        precondition_met,
    })
}

/// Exact rational value of the bound for rational delta.
pub fn counting_bound_exact(c: u64, delta: &Rat) -> Result<(Rat, bool)> {
    let d = rat_to_f64(delta);
    let flag = counting_bound(c, d)?.precondition_met;
    let two = Rat::from_integer(2.into());
    let one = Rat::from_integer(1.into());
    let c_rat = Rat::from_integer(c.into());
    let value = &c_rat + &one + (&two + delta) / (&one - &two * delta) * delta * &c_rat;
    Ok((value, flag))
}
