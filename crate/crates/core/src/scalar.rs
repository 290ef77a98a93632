//! Scalar abstractions shared by the exact kernels.
//!
//! Quadratic-field arithmetic is written against [`IntScalar`], so the same
//! code runs on `i64`, `i128` or [`BigInt`]. Orbit sorting is written against
//! [`OrbitWord`], the unsigned machine words used as packed sort keys.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint, ToBigInt};
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive, Unsigned};

/// Signed integer type usable as the coefficient ring of a quadratic field.
///
/// Fixed-width types overflow silently on large inputs; [`BigInt`] never does
/// and is what the crate-level aliases use.
pub trait IntScalar:
    Integer + Signed + Clone + Roots + FromPrimitive + ToBigInt + Debug + Display + Send + Sync
{
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Roots + FromPrimitive + ToBigInt + Debug + Display + Send + Sync
{
}

/// Unsigned word holding a packed `(residue, multiplier)` sort key.
pub trait OrbitWord: PrimInt + Unsigned + FromPrimitive + ToPrimitive + Send + Sync {
    fn from_biguint(value: &BigUint) -> Option<Self>;
    fn to_bigint(self) -> BigInt;
}

impl OrbitWord for u64 {
    fn from_biguint(value: &BigUint) -> Option<Self> {
        value.to_u64()
    }

    fn to_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl OrbitWord for u128 {
    fn from_biguint(value: &BigUint) -> Option<Self> {
        value.to_u128()
    }

    fn to_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}
