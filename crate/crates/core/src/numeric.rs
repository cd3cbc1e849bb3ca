//! Exact rationals and the float conversions used at formula boundaries.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;
use std::fmt::Display;

/// Exact average degrees `(r+1)·e / N`.
pub type Rational = Ratio<i64>;

pub fn ratio_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub fn big_to_f64(q: &BigRational) -> f64 {
    // Ratio<BigInt>::to_f64 rounds correctly even when both parts overflow f64.
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_to_big(q: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn format_ratio<T: Display + Clone + num_integer::Integer>(q: &Ratio<T>) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn serialize_ratio<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(q))
}

pub fn serialize_big_ratio<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(q))
}

/// Serializes `+∞` as the string `"inf"` since JSON has no infinity.
pub fn serialize_extended<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_infinite() && x.is_sign_positive() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*x)
    }
}

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_big_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn is_positive(q: &BigRational) -> bool {
    q.is_positive()
}

/// Nonnegative integer power of an exact rational.
pub fn big_pow(q: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= q;
    }
    acc
}
