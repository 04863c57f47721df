//! Exact signed rationals.
//!
//! Every coordinate, cost and ratio in the crate is a [`Rational`]. The
//! representation is a reduced `i64` fraction; arithmetic is checked and
//! panics on overflow instead of wrapping, so a result is either exact or
//! absent. Profiles drawn at the default 1/1000 granularity stay many orders
//! of magnitude below the limit.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("rational literal `{0}` does not fit in 64-bit fractions")]
    OutOfRange(String),
}

const OVERFLOW: &str = "rational arithmetic overflowed i64; exactness cannot be preserved";

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom` in reduced form.
    ///
    /// Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn half(&self) -> Self {
        *self / Rational::from_integer(2)
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Self {
        (*self + *other).half()
    }

    /// Advisory floating-point rendering. Never used for decisions.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded to `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let value = self.to_f64();
        if value == 0.0 {
            return "0".to_string();
        }
        let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), value)
            .parse()
            .unwrap_or(value);
        format!("{rounded}")
    }

    /// Canonical `p/q` form, also used for integers (`3/1`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value as i64)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_add(&rhs.0).expect(OVERFLOW))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_sub(&rhs.0).expect(OVERFLOW))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_mul(&rhs.0).expect(OVERFLOW))
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0.checked_div(&rhs.0).expect(OVERFLOW))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(Ratio::new_raw(
            self.numer().checked_neg().expect(OVERFLOW),
            self.denom(),
        ))
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + *x)
    }
}

fn parse_int(text: &str, original: &str) -> Result<i64, RationalParseError> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(original.to_string()));
    }
    text.parse::<i64>()
        .map_err(|_| RationalParseError::OutOfRange(original.to_string()))
}

fn pow10(exp: u32, original: &str) -> Result<i64, RationalParseError> {
    10i64
        .checked_pow(exp)
        .ok_or_else(|| RationalParseError::OutOfRange(original.to_string()))
}

/// Parses a finite decimal such as `-0.8`, `12.`, `.5` or `1.25e-3` exactly.
fn parse_decimal(text: &str, original: &str) -> Result<Rational, RationalParseError> {
    let malformed = || RationalParseError::Malformed(original.to_string());
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], parse_int(&text[pos + 1..], original)?),
        None => (text, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: i64 = all_digits
        .parse()
        .map_err(|_| RationalParseError::OutOfRange(original.to_string()))?;
    let scale = exponent - frac_part.len() as i64;
    let magnitude = if scale >= 0 {
        let factor = pow10(scale as u32, original)?;
        Rational::from_integer(
            numer
                .checked_mul(factor)
                .ok_or_else(|| RationalParseError::OutOfRange(original.to_string()))?,
        )
    } else {
        let exp = u32::try_from(-scale).map_err(|_| RationalParseError::OutOfRange(original.to_string()))?;
        Rational::new(numer, pow10(exp, original)?)
    };
    Ok(if negative { -magnitude } else { magnitude })
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts integers (`-3`), fractions (`p/q`) and finite decimals
    /// (`0.8`, `1e-2`). Decimals convert exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.is_empty() {
            return Err(RationalParseError::Empty);
        }
        if let Some((p, q)) = text.split_once('/') {
            let numer = parse_int(p.trim(), s)?;
            let denom = parse_int(q.trim(), s)?;
            if denom == 0 {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            if numer == i64::MIN || denom == i64::MIN {
                return Err(RationalParseError::OutOfRange(s.to_string()));
            }
            return Ok(Rational::new(numer, denom));
        }
        if text.contains(['.', 'e', 'E']) {
            return parse_decimal(text, s);
        }
        let value = parse_int(text, s)?;
        if value == i64::MIN {
            return Err(RationalParseError::OutOfRange(s.to_string()));
        }
        Ok(Rational::from_integer(value))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
