//! Scalar traits shared by the exact and floating-point code paths.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A coefficient ring: integers, rationals or floats.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    /// `None` when the value does not fit.
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// `self / d` when the quotient is exact in this ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

/// Integer scalars (machine or arbitrary precision).
pub trait IntScalar: Scalar + Integer + Roots + Ord + Hash + ToPrimitive {
    fn to_bigint(&self) -> BigInt;
}

/// Scalars in which every nonzero division is exact.
pub trait FieldScalar: Scalar {}

macro_rules! impl_int {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn from_bigint(v: &BigInt) -> Option<Self> {
                <$t as num_traits::FromPrimitive>::from_i128(v.to_i128()?)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn div_exact(&self, d: &Self) -> Option<Self> {
                if *d == 0 || self % d != 0 {
                    None
                } else {
                    Some(self / d)
                }
            }
        }
        impl IntScalar for $t {
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

impl_int!(i64);
impl_int!(i128);

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        ToPrimitive::to_f64(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (*d != 0.0).then(|| self / d)
    }
}

impl FieldScalar for f64 {}

impl<T: IntScalar> Scalar for Ratio<T> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v))
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        T::from_bigint(v).map(Ratio::from_integer)
    }
    fn to_f64(&self) -> f64 {
        let n = self.numer().to_bigint();
        let d = self.denom().to_bigint();
        match (ToPrimitive::to_f64(&n), ToPrimitive::to_f64(&d)) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
            _ => ToPrimitive::to_f64(&Ratio::new(n, d)).unwrap_or(f64::NAN),
        }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

impl<T: IntScalar> FieldScalar for Ratio<T> {}

pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

/// Exact square root of a non-negative integer.
pub fn sqrt_exact<T: IntScalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (r.clone() * r.clone() == *n).then_some(r)
}

pub fn is_square<T: IntScalar>(n: &T) -> bool {
    sqrt_exact(n).is_some()
}

/// Whether a rational number is the square of a rational.
pub fn is_square_ratio<T: IntScalar>(q: &Ratio<T>) -> bool {
    is_square(q.numer()) && is_square(q.denom())
}

pub fn ratio<T: IntScalar>(n: T) -> Ratio<T> {
    Ratio::from_integer(n)
}

/// `floor(sqrt(x))` for a non-negative integer.
pub fn isqrt<T: IntScalar>(n: &T) -> T {
    if n.is_positive() {
        n.sqrt()
    } else {
        T::zero()
    }
}

/// Smallest integer `r` with `r*r >= n`.
pub fn isqrt_ceil<T: IntScalar>(n: &T) -> T {
    let r = isqrt(n);
    if r.clone() * r.clone() < *n {
        r + T::one()
    } else {
        r
    }
}

/// Integer to BigInt-backed rational.
pub fn big_ratio(n: &BigInt) -> Ratio<BigInt> {
    Ratio::from_integer(n.clone())
}

/// Convert between integer types, panicking on overflow.
pub fn cast_int<A: IntScalar, B: IntScalar>(a: &A) -> B {
    B::from_bigint(&a.to_bigint()).expect("integer out of range")
}

pub fn try_cast_int<A: IntScalar, B: IntScalar>(a: &A) -> Option<B> {
    B::from_bigint(&a.to_bigint())
}

pub fn one<T: Scalar>() -> T {
    T::one()
}
