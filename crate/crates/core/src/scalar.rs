//! Scalar rings used for multivector coefficients.
//!
//! Identities are verified over [`Rational`] (arbitrary precision, no
//! rounding); quadrature and lattice sums run over `f64`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_float(&self) -> f64;

    /// Exact conversion for rationals (every finite float is a dyadic rational).
    fn from_float(v: f64) -> Option<Self>;

    /// `acc += a * b`
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self);

    /// `acc -= a * b`
    fn mul_sub_from(acc: &mut Self, a: &Self, b: &Self);

    fn to_doc(&self) -> ScalarDoc;

    fn from_doc(doc: &ScalarDoc) -> Result<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn from_float(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    #[inline]
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    #[inline]
    fn mul_sub_from(acc: &mut Self, a: &Self, b: &Self) {
        *acc -= a * b;
    }

    fn to_doc(&self) -> ScalarDoc {
        ScalarDoc::Float(*self)
    }

    fn from_doc(doc: &ScalarDoc) -> Result<Self> {
        match doc {
            ScalarDoc::Float(v) => Ok(*v),
            ScalarDoc::Exact(s) => ToPrimitive::to_f64(&parse_rational(s)?)
                .ok_or_else(|| Error::Parse(format!("cannot represent {s} as f64"))),
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_float(v: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(v)
    }

    #[inline]
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    #[inline]
    fn mul_sub_from(acc: &mut Self, a: &Self, b: &Self) {
        *acc -= a * b;
    }

    fn to_doc(&self) -> ScalarDoc {
        ScalarDoc::Exact(self.to_string())
    }

    fn from_doc(doc: &ScalarDoc) -> Result<Self> {
        match doc {
            ScalarDoc::Exact(s) => parse_rational(s),
            ScalarDoc::Float(v) => <Rational as FromPrimitive>::from_f64(*v)
                .ok_or_else(|| Error::Parse(format!("non-finite value {v}"))),
        }
    }
}

/// Serialized scalar: `"p/q"` strings in exact mode, plain numbers otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Exact(String),
    Float(f64),
}

impl std::fmt::Display for ScalarDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarDoc::Exact(s) => f.write_str(s),
            ScalarDoc::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

/// Parses a scalar literal in the requested ring.
pub fn parse_scalar<T: Scalar>(s: &str) -> Result<T> {
    if T::EXACT {
        T::from_doc(&ScalarDoc::Exact(s.to_string()))
    } else {
        let v: f64 = match s.trim().parse() {
            Ok(v) => v,
            Err(_) => ToPrimitive::to_f64(&parse_rational(s)?).unwrap_or(f64::NAN),
        };
        T::from_doc(&ScalarDoc::Float(v))
    }
}

/// Parses a comma-separated list of scalars, e.g. `"0.1,0.2,0,0"`.
pub fn parse_scalar_list<T: Scalar>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(parse_scalar).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::ratio(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::ratio(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn doc_round_trip() {
        let r = Rational::ratio(-5, 12);
        assert_eq!(Rational::from_doc(&r.to_doc()).unwrap(), r);
        let f = 0.3_f64;
        assert_eq!(f64::from_doc(&f.to_doc()).unwrap(), f);
    }
}
