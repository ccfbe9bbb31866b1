//! Exact coefficient domains.
//!
//! Two concrete domains are provided: arbitrary-precision integers
//! ([`BigInt`]) and arbitrary-precision rationals ([`BigRational`]). Both are
//! nontrivial rings; constructors that accept a generic domain call
//! [`ensure_nontrivial`] so a ring with `1 = 0` is rejected up front.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PolyError, Result};

/// A commutative ring element with exact arithmetic.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short domain name used in reports ("integer", "rational").
    const NAME: &'static str;

    /// Converts `num/den` into the domain, or `None` if it is not an element
    /// (e.g. `1/2` over the integers) or `den` is zero.
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Strictly below zero.
    fn is_negative(&self) -> bool;

    fn abs(&self) -> Self;
}

/// A coefficient domain that is also a field.
pub trait Field: Coefficient + Div<Output = Self> {}

impl Coefficient for BigInt {
    const NAME: &'static str = "integer";

    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let (q, r) = num.div_rem(&den);
        r.is_zero().then_some(q)
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Coefficient for BigRational {
    const NAME: &'static str = "rational";

    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Field for BigRational {}

/// Rejects the ring with one element.
pub fn ensure_nontrivial<C: Coefficient>() -> Result<()> {
    if C::one().is_zero() {
        Err(PolyError::TrivialDomain)
    } else {
        Ok(())
    }
}
