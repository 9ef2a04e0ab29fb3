use std::fmt;

use crate::error::{Error, Result};

/// Coefficient ring of every scalar, matrix and algebra in the crate.
///
/// All three kinds are commutative integral domains. `PrimeField` must be
/// built through [`RingSpec::prime_field`] so the modulus is known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// Largest modulus accepted for GF(p); keeps residue products inside `u128`
/// and primality testing by trial division instant.
pub const MAX_MODULUS: u64 = 1 << 32;

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::Precondition(format!(
                "modulus {p} is not below {MAX_MODULUS}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn has_zero_divisors(&self) -> bool {
        false
    }

    /// 0 for ℤ and ℚ, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// ℚ for ℤ, the ring itself otherwise.
    pub fn fraction_field(&self) -> RingSpec {
        match self {
            RingSpec::Integers => RingSpec::Rationals,
            other => *other,
        }
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(*self))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
