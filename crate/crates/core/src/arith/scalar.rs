use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RingSpec;
use crate::error::{Error, Result};

/// An exact ring element.
///
/// The variant determines the ring: `Int` lives in ℤ, `Rat` in ℚ (always in
/// lowest terms with positive denominator, which `BigRational` maintains) and
/// `Mod` in GF(modulus) as a canonical residue. Arithmetic between different
/// rings is a logic error and panics; matrix-level code checks rings up front.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(ring: RingSpec) -> Self {
        Self::from_i64(ring, 0)
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn from_i64(ring: RingSpec, v: i64) -> Self {
        Self::from_bigint(ring, &BigInt::from(v))
    }

    pub fn from_bigint(ring: RingSpec, v: &BigInt) -> Self {
        match ring {
            RingSpec::Integers => Scalar::Int(v.clone()),
            RingSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            RingSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    residue: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational number into `ring`. Fails when the denominator is not
    /// invertible there (non-integral value in ℤ, or p | denominator in GF(p)).
    pub fn from_rational(ring: RingSpec, q: &BigRational) -> Result<Self> {
        match ring {
            RingSpec::Rationals => Ok(Scalar::Rat(q.clone())),
            RingSpec::Integers => {
                if q.is_integer() {
                    Ok(Scalar::Int(q.to_integer()))
                } else {
                    Err(Error::Parse(format!("{q} is not an integer")))
                }
            }
            RingSpec::PrimeField(p) => {
                let num = Self::from_bigint(ring, q.numer());
                let den = Self::from_bigint(ring, q.denom());
                den.inv()
                    .map(|d| &num * &d)
                    .ok_or_else(|| Error::Parse(format!("denominator of {q} vanishes in GF({p})")))
            }
        }
    }

    /// Parses `"a"` or `"a/b"` with integer `a`, `b`.
    pub fn parse(ring: RingSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("not a rational number: {text:?}"));
        let q = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {text:?}")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        Self::from_rational(ring, &q)
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Int(_) => RingSpec::Integers,
            Scalar::Rat(_) => RingSpec::Rationals,
            Scalar::Mod { modulus, .. } => RingSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero and for non-units of ℤ.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Int(v) => {
                if v.abs().is_one() {
                    Some(Scalar::Int(v.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(v) => Some(Scalar::Rat(v.recip())),
            Scalar::Mod { residue, modulus } => Some(Scalar::Mod {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    /// The value as a rational number when the ring is ℤ or ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(v) => Some(BigRational::from_integer(v.clone())),
            Scalar::Rat(v) => Some(v.clone()),
            Scalar::Mod { .. } => None,
        }
    }

    /// Re-embeds into another ring: ℤ → ℚ, ℤ/ℚ → GF(p) (fails if a
    /// denominator vanishes), ℚ → ℤ (fails on non-integers).
    pub fn convert(&self, ring: RingSpec) -> Result<Self> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        match self.to_rational() {
            Some(q) => Self::from_rational(ring, &q),
            None => Err(Error::RingMismatch {
                left: self.ring(),
                right: ring,
            }),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (
                Scalar::Mod {
                    residue: a,
                    modulus: p,
                },
                Scalar::Mod {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (
                Scalar::Mod {
                    residue: a,
                    modulus: p,
                },
                Scalar::Mod {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Scalar::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Scalar::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}
