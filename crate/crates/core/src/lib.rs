//! Generalized Euler totients defined by elementary symmetric polynomial
//! constraints.
//!
//! The crate counts zeros of elementary symmetric systems over prime fields
//! ([`symfield`]), turns those counts into exact product formulas for the
//! joint and individual totients ([`totient`]), and counts solutions of
//! linear congruences whose unknowns are restricted by unit-gcd conditions
//! ([`congruence`]). Every closed form has a brute-force counterpart built
//! on the same parallel tuple enumerator ([`enumerate`]), and [`verify`]
//! holds the sweeps that compare the two.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod congruence;
pub mod enumerate;
mod error;
pub mod symfield;
pub mod totient;
pub mod verify;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::ToPrimitive;

pub use arith::{ArithmeticFn, Factorization, NamedFn, QuadChar};
pub use congruence::CongruenceProblem;
pub use enumerate::Budget;
pub use error::{Error, Result};
pub use symfield::{Mode, QuadraticForm, SymSystem};
pub use totient::TotientSpec;

/// An exact, non-negative solution count.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroCount(BigUint);

impl ZeroCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// Converts a signed intermediate; a negative value means a formula went wrong.
    pub(crate) fn from_signed(v: BigInt) -> Result<Self> {
        match v.sign() {
            Sign::Minus => Err(Error::InvariantViolation(format!("negative count {v}"))),
            _ => Ok(ZeroCount(v.magnitude().clone())),
        }
    }
}

impl From<u64> for ZeroCount {
    fn from(v: u64) -> Self {
        ZeroCount(BigUint::from(v))
    }
}

impl From<BigUint> for ZeroCount {
    fn from(v: BigUint) -> Self {
        ZeroCount(v)
    }
}

impl PartialEq<u64> for ZeroCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for ZeroCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
