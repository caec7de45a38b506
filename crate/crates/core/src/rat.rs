//! Arbitrary-precision rational scalars.
//!
//! `Rat` is `num::BigRational`: always in lowest terms with a positive
//! denominator, which is exactly the invariant the rest of the crate
//! assumes. This module adds parsing, canonical formatting, and the
//! field-element hook used by generic polynomial/matrix code.

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::FieldElem;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"-3"`, `"3/4"`, `"-3/4"`. Whitespace around tokens is allowed.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let make_err = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| make_err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| make_err())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| make_err())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Multiplicity of `p` in `n` (number of times `p` divides `n`).
pub fn int_val_at(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// True when neither numerator nor denominator of `r` is divisible by `p`.
pub fn rat_is_p_unit(r: &Rat, p: u64) -> bool {
    if r.is_zero() {
        return true;
    }
    int_val_at(r.numer(), p) == 0 && int_val_at(r.denom(), p) == 0
}

/// Floor of the square root of a nonnegative integer.
pub fn int_sqrt_ceil(n: &BigInt) -> BigInt {
    if n.sign() != Sign::Plus {
        return BigInt::zero();
    }
    let r = n.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

impl FieldElem for Rat {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat(" -6/8 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("-2").unwrap(), rat_int(-2));
        assert_eq!(rat_str(&rat(-6, 8)), "-3/4");
        assert_eq!(rat_str(&rat_int(5)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn p_unit() {
        assert!(rat_is_p_unit(&rat(3, 4), 5));
        assert!(!rat_is_p_unit(&rat(5, 4), 5));
        assert!(!rat_is_p_unit(&rat(3, 10), 5));
    }
}
