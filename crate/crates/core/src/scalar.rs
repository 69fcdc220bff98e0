//! Number tower shared by every algorithm in the crate.
//!
//! All series, operator and verification code is generic over [`Scalar`],
//! which has two concrete fields: exact arbitrary-precision rationals
//! ([`Rational`]) and `f64`. Rationals are kept in canonical form by
//! `num-rational` after every operation.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Absolute distance to a non-positive integer under which a float is
/// treated as a pole of a Pochhammer denominator.
pub const FLOAT_POLE_TOLERANCE: f64 = 1e-12;

/// A field element usable by the series and operator machinery.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// True when `self` is a non-positive integer (exactly, or within
    /// [`FLOAT_POLE_TOLERANCE`] for floats).
    fn is_nonpositive_integer(&self) -> bool;
    fn to_f64(&self) -> f64;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && !self.is_positive()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_nonpositive_integer(&self) -> bool {
        *self < FLOAT_POLE_TOLERANCE && (self - self.round()).abs() < FLOAT_POLE_TOLERANCE
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`, `1` for `n = 0`.
///
/// Always an explicit product so the rational path is exact and no
/// finite `a` is a pole.
pub fn pochhammer<S: Scalar>(a: &S, n: usize) -> S {
    let mut acc = S::one();
    for k in 0..n {
        acc = acc * (a.clone() + S::from_i64(k as i64));
    }
    acc
}

/// The table `[(a)_0, (a)_1, ..., (a)_n]`.
pub fn pochhammer_table<S: Scalar>(a: &S, n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = S::one();
    out.push(acc.clone());
    for k in 0..n {
        acc = acc * (a.clone() + S::from_i64(k as i64));
        out.push(acc.clone());
    }
    out
}

/// One multiplicative step `(a+k)/(b+k)` of a Pochhammer ratio.
pub fn pochhammer_ratio_step<S: Scalar>(a: &S, b: &S, k: usize) -> Result<S> {
    let kk = S::from_i64(k as i64);
    let den = b.clone() + kk.clone();
    if den.is_zero() || den.is_nonpositive_integer() && den.abs_f64() < FLOAT_POLE_TOLERANCE {
        return Err(Error::Pole(format!("({b}) + {k} vanishes in a Pochhammer ratio")));
    }
    Ok((a.clone() + kk) / den)
}

/// `n!` in the scalar field.
pub fn factorial<S: Scalar>(n: usize) -> S {
    pochhammer(&S::one(), n)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.25"` or
/// `"-1.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = s.parse::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -r } else { r })
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Convenience constructor used throughout tests and data tables.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&ratio(7, 3), 0), ratio(1, 1));
        assert_eq!(pochhammer(&ratio(1, 1), 5), ratio(120, 1));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(pochhammer(&-ratio(2, 1), 3), ratio(0, 1));
        assert_eq!(pochhammer(&-ratio(2, 1), 2), ratio(2, 1));
    }

    #[test]
    fn ratio_step_examples() {
        let a = ratio(4, 9);
        assert_eq!(pochhammer_ratio_step(&a, &a, 3).unwrap(), ratio(1, 1));
        assert_eq!(pochhammer_ratio_step(&ratio(1, 1), &ratio(2, 1), 0).unwrap(), ratio(1, 2));
        let (a, b) = (ratio(1, 3), ratio(5, 2));
        let composed = (0..3).fold(ratio(1, 1), |acc, k| acc * pochhammer_ratio_step(&a, &b, k).unwrap());
        assert_eq!(composed, ratio(32, 1215));
        assert!(matches!(pochhammer_ratio_step(&ratio(1, 1), &-ratio(2, 1), 2), Err(Error::Pole(_))));
        assert!(pochhammer_ratio_step(&1.0, &(-2.0 + 1e-14), 2).is_err());
        assert!(pochhammer_ratio_step(&1.0, &-2.5, 2).is_ok());
    }

    #[test]
    fn float_pole_guard() {
        assert!((-3.0f64).is_nonpositive_integer());
        assert!((0.0f64).is_nonpositive_integer());
        assert!((-3.0f64 + 5e-13).is_nonpositive_integer());
        assert!(!(-3.0f64 + 1e-9).is_nonpositive_integer());
        assert!(!(2.0f64).is_nonpositive_integer());
        assert!(ratio(-4, 1).is_nonpositive_integer());
        assert!(!ratio(-4, 3).is_nonpositive_integer());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), ratio(-7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), ratio(-3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), ratio(200, 1));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&ratio(-2, 6)), "-1/3");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
    }

    #[test]
    fn float_matches_exact_pochhammer() {
        for a in [ratio(-19, 2), ratio(-1, 3), ratio(7, 5), ratio(10, 1), ratio(-10, 7)] {
            for n in 0..=30 {
                let exact = Scalar::to_f64(&pochhammer(&a, n));
                let float = pochhammer(&Scalar::to_f64(&a), n);
                if exact == 0.0 {
                    assert_eq!(float, 0.0);
                } else {
                    assert!(((float - exact) / exact).abs() < 1e-13, "a={a} n={n}");
                }
            }
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn pochhammer_splits(a in rational(), m in 0usize..=20, n in 0usize..=20) {
            let lhs = pochhammer(&a, m + n);
            let rhs = pochhammer(&a, m) * pochhammer(&(a.clone() + Rational::from_i64(m as i64)), n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pochhammer_vanishes_at_negative_integers(m in 0i64..15, extra in 1usize..10) {
            let k = m as usize + extra;
            prop_assert!(Scalar::is_zero(&pochhammer(&Rational::from_i64(-m), k)));
        }

        #[test]
        fn rational_arithmetic_is_exact(a in rational(), b in rational()) {
            prop_assert_eq!((a.clone() + b.clone()) - b, a);
        }

        #[test]
        fn float_pochhammer_close(p in -100i64..100, n in 0usize..=30) {
            let a = ratio(p, 10);
            let exact = Scalar::to_f64(&pochhammer(&a, n));
            let float = pochhammer(&Scalar::to_f64(&a), n);
            if exact == 0.0 {
                prop_assert!(float.abs() < 1e-300 || float == 0.0);
            } else {
                prop_assert!(((float - exact) / exact).abs() < 1e-13);
            }
        }
    }
}
