//! Exact rationals and the extended value domain `[0, ∞]`.
//!
//! Every number crossing a public boundary is rendered as `"p/q"` (lowest
//! terms, positive denominator, integers included: `"5/1"`) or `"inf"`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^-e` as an exact rational.
pub fn pow2_neg(e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << e as usize)
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse("rational", format!("cannot parse {s:?} as p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::parse("rational", format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Renders a rational as a decimal string with `digits` fractional digits
/// (truncated toward zero). Display only.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r * Rational::from_integer(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative();
    let (int_part, frac) = scaled.abs().div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let f = frac.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - f.len()));
        out.push_str(&f);
    }
    out
}

/// A value in `[0, ∞]` (finite part may be any rational; submeasure values
/// are nonnegative by construction).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RationalX {
    Finite(Rational),
    Inf,
}

impl RationalX {
    pub fn zero() -> Self {
        RationalX::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        RationalX::Finite(int(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, RationalX::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RationalX::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            RationalX::Finite(r) => Some(r),
            RationalX::Inf => None,
        }
    }

    /// The value as an integer, if it is a finite integer.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            RationalX::Finite(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }

    /// `self / denom` for a positive finite `denom`; `∞ / d = ∞`.
    pub fn div_finite(&self, denom: &Rational) -> RationalX {
        debug_assert!(denom.is_positive());
        match self {
            RationalX::Finite(r) => RationalX::Finite(r / denom),
            RationalX::Inf => RationalX::Inf,
        }
    }

    pub fn max(self, other: RationalX) -> RationalX {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<Rational> for RationalX {
    fn from(r: Rational) -> Self {
        RationalX::Finite(r)
    }
}

impl Ord for RationalX {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RationalX::Inf, RationalX::Inf) => Ordering::Equal,
            (RationalX::Inf, _) => Ordering::Greater,
            (_, RationalX::Inf) => Ordering::Less,
            (RationalX::Finite(a), RationalX::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for RationalX {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &RationalX {
    type Output = RationalX;

    fn add(self, rhs: &RationalX) -> RationalX {
        match (self, rhs) {
            (RationalX::Finite(a), RationalX::Finite(b)) => RationalX::Finite(a + b),
            _ => RationalX::Inf,
        }
    }
}

impl Add for RationalX {
    type Output = RationalX;

    fn add(self, rhs: RationalX) -> RationalX {
        &self + &rhs
    }
}

impl fmt::Display for RationalX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalX::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            RationalX::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for RationalX {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("inf") {
            Ok(RationalX::Inf)
        } else {
            parse_rational(s).map(RationalX::Finite)
        }
    }
}

impl serde::Serialize for RationalX {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RationalX {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for plain rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
