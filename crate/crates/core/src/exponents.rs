//! Lebesgue exponents on `(0, ∞]` with the quasi-Banach conjugation rules.
//!
//! Values are exact: a positive rational or `+∞`. Every comparison that
//! decides a strict-versus-nonstrict boundary goes through this type.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational used for exponents, reciprocals and weight exponents.
pub type Rational = Ratio<i128>;

/// Largest denominator tried when converting a float to an exponent.
pub const DEFAULT_DENOMINATOR_CAP: i128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExponentError {
    #[error("exponent must be positive, got {0}")]
    NonPositive(Rational),
    #[error("{0} is not a rational with denominator at most {1}")]
    Inexact(f64, i128),
    #[error("cannot parse exponent from {0:?}")]
    Parse(alloc::string::String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Finite(Rational),
    Infinite,
}

/// An exponent in `(0, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtExponent(Repr);

pub fn rat(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// `max{x, 0}`.
pub fn positive_part(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

impl ExtExponent {
    pub const INFINITY: ExtExponent = ExtExponent(Repr::Infinite);

    pub fn new(value: Rational) -> Result<Self, ExponentError> {
        if value.is_positive() {
            Ok(ExtExponent(Repr::Finite(value)))
        } else {
            Err(ExponentError::NonPositive(value))
        }
    }

    pub fn ratio(num: i128, den: i128) -> Result<Self, ExponentError> {
        if den == 0 {
            return Err(ExponentError::NonPositive(Rational::zero()));
        }
        Self::new(rat(num, den))
    }

    /// Panics unless `n > 0`; meant for literals.
    pub fn int(n: i128) -> Self {
        Self::new(int(n)).expect("positive integer exponent")
    }

    /// The exponent with `1/p = x`; `x = 0` gives `∞`.
    pub fn from_reciprocal(x: Rational) -> Result<Self, ExponentError> {
        if x.is_zero() {
            Ok(Self::INFINITY)
        } else if x.is_positive() {
            Ok(ExtExponent(Repr::Finite(x.recip())))
        } else {
            Err(ExponentError::NonPositive(x))
        }
    }

    /// Converts a float, searching denominators up to `cap`.
    pub fn from_f64(x: f64, cap: i128) -> Result<Self, ExponentError> {
        if x.is_infinite() && x > 0.0 {
            return Ok(Self::INFINITY);
        }
        if !x.is_finite() || x <= 0.0 {
            return Err(ExponentError::Inexact(x, cap));
        }
        let mut den: i128 = 1;
        while den <= cap {
            let scaled = x * den as f64;
            if scaled.abs() < 9.0e15 {
                let num = libm::round(scaled) as i128;
                if num as f64 / den as f64 == x {
                    return Self::new(rat(num, den));
                }
            }
            den += 1;
        }
        Err(ExponentError::Inexact(x, cap))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinite)
    }

    pub fn finite(&self) -> Option<Rational> {
        match self.0 {
            Repr::Finite(v) => Some(v),
            Repr::Infinite => None,
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> Rational {
        match self.0 {
            Repr::Finite(v) => v.recip(),
            Repr::Infinite => Rational::zero(),
        }
    }

    /// `p'`: `p/(p-1)` on `(1,∞)`, `∞` on `(0,1]`, `1` at `∞`.
    pub fn conjugate(&self) -> Self {
        match self.0 {
            Repr::Infinite => ExtExponent(Repr::Finite(Rational::one())),
            Repr::Finite(v) if v <= Rational::one() => Self::INFINITY,
            Repr::Finite(v) => ExtExponent(Repr::Finite(v / (v - Rational::one()))),
        }
    }

    /// `p▽ = min{p, p'}`, always at most 2.
    pub fn lower_conjugate(&self) -> Self {
        core::cmp::min(*self, self.conjugate())
    }

    /// `s·(r/s)'`, characterised by `1/compound = (1/s - 1/r)_+`.
    pub fn compound(s: Self, r: Self) -> Self {
        let x = positive_part(s.reciprocal() - r.reciprocal());
        Self::from_reciprocal(x).expect("nonnegative reciprocal")
    }

    pub fn to_f64(&self) -> f64 {
        match self.0 {
            Repr::Finite(v) => *v.numer() as f64 / *v.denom() as f64,
            Repr::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for ExtExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (Repr::Infinite, Repr::Infinite) => Ordering::Equal,
            (Repr::Infinite, _) => Ordering::Greater,
            (_, Repr::Infinite) => Ordering::Less,
            (Repr::Finite(a), Repr::Finite(b)) => a.cmp(&b),
        }
    }
}

impl PartialOrd for ExtExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Infinite => f.write_str("inf"),
            Repr::Finite(v) => write!(f, "{}", v),
        }
    }
}

/// Accepts `inf`, `∞`, `a/b`, integers and decimals.
impl FromStr for ExtExponent {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ExponentError::Parse(t.into());
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Self::INFINITY);
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Self::new(rat(n, d));
        }
        if let Ok(n) = t.parse::<i128>() {
            return Self::new(int(n));
        }
        parse_decimal(t).ok_or_else(bad).and_then(Self::new)
    }
}

/// Exact decimal literal such as `0.25` or `-1.5`.
pub fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.')?;
    if frac.len() > 18 || (whole.is_empty() && frac.is_empty()) {
        return None;
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let w: i128 = if whole.is_empty() { 0 } else { whole.parse().ok()? };
    let f: i128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let scale = 10i128.pow(frac.len() as u32);
    let v = rat(w * scale + f, scale);
    Some(if neg { -v } else { v })
}
