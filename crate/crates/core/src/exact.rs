//! Exact rational scalars used for epsilons, enlargement probes and hull tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::space::FeatureVector;

pub type RationalPoint = Vec<BigRational>;

pub fn rational_point(v: &FeatureVector) -> RationalPoint {
    v.values().iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

pub fn squared_distance(p: &[BigRational], q: &[BigRational]) -> BigRational {
    p.iter()
        .zip(q)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// Parses `"3"`, `"-0.25"`, `"1.5e0"` is not accepted; `"3/4"` is.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidNumber(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(mantissa, scale);
    Ok(if neg { -value } else { value })
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// A nonnegative exact tolerance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(BigRational);

impl Epsilon {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeEpsilon(value.to_string()));
        }
        Ok(Epsilon(value))
    }

    pub fn zero() -> Self {
        Epsilon(BigRational::zero())
    }

    pub fn from_integer(v: u64) -> Self {
        Epsilon(BigRational::from_integer(v.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn squared(&self) -> BigRational {
        &self.0 * &self.0
    }

    /// `true` when an integer squared distance is within this tolerance.
    pub fn admits_squared(&self, squared: u128) -> bool {
        BigRational::from_integer(squared.into()) <= self.squared()
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Epsilon::new(parse_rational(s)?)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0, f)
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Renders a rational point as `(x,y,...)` with fractions in lowest terms.
pub fn format_point(p: &[BigRational]) -> String {
    struct R<'a>(&'a BigRational);
    impl fmt::Display for R<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_rational(self.0, f)
        }
    }
    let parts: Vec<String> = p.iter().map(|x| R(x).to_string()).collect();
    format!("({})", parts.join(","))
}
