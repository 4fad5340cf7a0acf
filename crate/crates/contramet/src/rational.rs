//! Exact rational arithmetic.
//!
//! Every distance, potential value, and contraction factor in this crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. There is no floating point anywhere in the library,
//! so every comparison a verifier makes is a theorem about the instance, not
//! an approximation.
//!
//! JSON form: a rational serializes as `{"num": N, "den": N}` where both
//! fields are arbitrary-precision JSON integers (never strings, never
//! floats). Deserialization accepts any nonzero denominator and normalizes
//! the sign.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`, reducing to lowest terms. Fails on `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power with a signed exponent. `0^e` fails for `e < 0`;
    /// exponents beyond `u32` are refused (callers guard magnitudes long
    /// before this bound is relevant).
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if self.is_zero() && exp < 0 {
            return Err(Error::ZeroToNegativePower);
        }
        let mag: u32 = exp
            .unsigned_abs()
            .try_into()
            .map_err(|_| Error::ExponentGuard { exponent: BigInt::from(exp), guard: u32::MAX as u64 })?;
        let num = self.0.numer().pow(mag);
        let den = self.0.denom().pow(mag);
        let raised = if exp < 0 {
            BigRational::new(den, num)
        } else {
            BigRational::new(num, den)
        };
        Ok(Rational(raised))
    }

    /// `max` by value, cloning the larger operand.
    pub fn max_of(a: &Rational, b: &Rational) -> Rational {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// `min` by value, cloning the smaller operand.
    pub fn min_of(a: &Rational, b: &Rational) -> Rational {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl fmt::Display for Rational {
    /// `num/den`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({})", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"a/b"` or `"a"` with optional sign.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |_| Error::InvalidArgument(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let num = BigInt::from_str(n.trim()).map_err(bad)?;
                let den = BigInt::from_str(d.trim()).map_err(bad)?;
                Rational::new(num, den)
            }
            None => Ok(Rational::from_int(BigInt::from_str(s.trim()).map_err(bad)?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

fn bigint_to_number(v: &BigInt) -> Option<serde_json::Number> {
    serde_json::Number::from_str(&v.to_string()).ok()
}

fn number_to_bigint(n: &serde_json::Number) -> Option<BigInt> {
    BigInt::from_str(&n.to_string()).ok()
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let err = || S::Error::custom("rational component is not representable as a JSON number");
        let num = bigint_to_number(self.numer()).ok_or_else(err)?;
        let den = bigint_to_number(self.denom()).ok_or_else(err)?;
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &num)?;
        st.serialize_field("den", &den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            num: serde_json::Number,
            den: serde_json::Number,
        }
        let repr = Repr::deserialize(deserializer)?;
        let num = number_to_bigint(&repr.num)
            .ok_or_else(|| D::Error::custom("\"num\" must be an integer"))?;
        let den = number_to_bigint(&repr.den)
            .ok_or_else(|| D::Error::custom("\"den\" must be an integer"))?;
        Rational::new(num, den).map_err(|_| D::Error::custom("\"den\" must be nonzero"))
    }
}

/// Serde adapters for `BigInt` fields encoded as arbitrary-precision JSON
/// integers.
pub(crate) mod bigint_json {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &BigInt,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let n = bigint_to_number(v)
            .ok_or_else(|| S::Error::custom("integer is not representable as a JSON number"))?;
        n.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        number_to_bigint(&n).ok_or_else(|| D::Error::custom("expected an integer"))
    }
}
