//! Exact nonnegative rationals used for norms, radii and declared bounds.

use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{OmegaError, Result};

/// An exact nonnegative rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(OmegaError::NegativeScalar(value.to_string()));
        }
        Ok(Scalar(value))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`. Panics if `denom == 0`.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// The absolute value of a rational.
    pub fn abs_of(q: &BigRational) -> Self {
        Scalar(q.abs())
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Scalar(BigRational::new(BigInt::one(), BigInt::one() << k as usize))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &Self) -> Self {
        Scalar((&self.0 - &other.0).abs())
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(Scalar(d))
    }

    /// `self - other` clamped at zero.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        self.checked_sub(other).unwrap_or_else(Scalar::zero)
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| Scalar(&self.0 / &other.0))
    }

    pub fn pow(&self, exp: u64) -> Self {
        Scalar(crate::sequences::catalog::rational_pow(&self.0, exp))
    }

    /// Smallest `m >= 0` with `2^-m <= self`. Requires `self > 0`.
    pub fn precision_below(&self) -> u32 {
        assert!(!self.is_zero(), "precision_below of zero");
        let numer = self.0.numer();
        let denom = self.0.denom();
        // 2^-m <= n/d  <=>  d <= n * 2^m
        let mut m = (denom.bits() as i64 - numer.bits() as i64 - 1).max(0) as u32;
        while denom > &(numer << m as usize) {
            m += 1;
        }
        while m > 0 && denom <= &(numer << (m - 1) as usize) {
            m -= 1;
        }
        m
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl TryFrom<BigRational> for Scalar {
    type Error = OmegaError;

    fn try_from(value: BigRational) -> Result<Self> {
        Scalar::new(value)
    }
}

impl From<Scalar> for BigRational {
    fn from(s: Scalar) -> Self {
        s.0
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;

    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 / &rhs.0)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}
