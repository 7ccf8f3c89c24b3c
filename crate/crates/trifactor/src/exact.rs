//! Exact rational arithmetic helpers.
//!
//! All threshold comparisons in this crate are exact: thresholds are
//! rationals, counts are integers, and comparisons clear denominators in
//! big-integer arithmetic. Floating point never decides an assertion.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

pub type Rat = Rational64;
pub type BigRat = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, a decimal like `"0.05"`, or a plain integer, exactly.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let invalid = || RatParseError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| invalid())?;
        let d: i64 = den.trim().parse().map_err(|_| invalid())?;
        if d == 0 {
            return Err(RatParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| invalid())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let f: i64 = frac.parse().map_err(|_| invalid())?;
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(invalid)?;
        let frac_part = Rat::new(f, scale);
        let int_part = Rat::from_integer(i);
        return Ok(if neg {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let n: i64 = s.parse().map_err(|_| invalid())?;
    Ok(Rat::from_integer(n))
}

pub fn big(r: Rat) -> BigRat {
    BigRat::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn big_int(x: u64) -> BigRat {
    BigRat::from_integer(BigInt::from(x))
}

/// `⌈q · x⌉` for `q ≥ 0`.
pub fn ceil_mul(q: Rat, x: u64) -> u64 {
    assert!(!q.is_negative(), "ceil_mul needs q >= 0");
    let num = BigInt::from(*q.numer()) * BigInt::from(x);
    let den = BigInt::from(*q.denom());
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    let up = if rem.is_zero() { quot } else { quot + 1 };
    u64::try_from(up).expect("ceil_mul result out of u64 range")
}

/// Exact test of `count ≥ q · base^exp`.
pub fn count_meets(count: u64, q: Rat, base: u64, exp: u32) -> bool {
    let lhs = BigInt::from(count) * BigInt::from(*q.denom());
    let rhs = BigInt::from(*q.numer()) * BigInt::from(base).pow(exp);
    lhs >= rhs
}

/// `q · base^exp` as an exact big rational.
pub fn rat_pow_mul(q: Rat, base: u64, exp: u32) -> BigRat {
    big(q) * BigRat::from_integer(BigInt::from(base).pow(exp))
}
