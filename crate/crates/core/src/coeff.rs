//! Exact coefficient rings.
//!
//! Elements of the algebra are finite linear combinations of basis words with
//! coefficients in an exact commutative ring. Arbitrary-precision rationals are
//! the default; arbitrary-precision integers are available for computations
//! that never divide.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default coefficient field.
pub type Rational = BigRational;

/// An exact commutative ring usable as coefficients.
pub trait Coefficient:
    Clone
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn is_negative(&self) -> bool;
}

impl Coefficient for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Shorthand for `num / den`. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
