//! Exact natural-number counts.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, One, Unsigned, Zero};

use crate::error::{Error, Result};

/// An exact unsigned count. Implemented for `u64`, `u128` and
/// [`BigUint`](num_bigint::BigUint); fixed-width types report overflow
/// instead of wrapping.
pub trait Count:
    Clone
    + Debug
    + Display
    + FromStr
    + Ord
    + Hash
    + Zero
    + One
    + Unsigned
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn of(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("every count type holds u64")
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }
}

impl<T> Count for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Ord
        + Hash
        + Zero
        + One
        + Unsigned
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Sum of an iterator of counts, failing on overflow.
pub fn try_sum<N: Count, I: IntoIterator<Item = N>>(items: I) -> Result<N> {
    items.into_iter().try_fold(N::zero(), |acc, x| acc.try_add(&x))
}
