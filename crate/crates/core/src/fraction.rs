//! Exact rational values for probabilities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator. Renders as `p/q` always,
/// including integers (`1/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactFraction(BigRational);

impl ExactFraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    /// `favorable / total` for counts; `total` must be positive.
    pub fn ratio(favorable: u64, total: u64) -> Self {
        assert!(total > 0, "empty sample space");
        Self(BigRational::new(favorable.into(), total.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_probability(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    /// Decimal rendering with four significant figures.
    pub fn decimal(&self) -> String {
        format_significant(self.to_f64(), 4)
    }
}

/// `x` rounded to `digits` significant figures, in plain notation.
pub fn format_significant(x: f64, digits: i32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl std::ops::Add for &ExactFraction {
    type Output = ExactFraction;
    fn add(self, rhs: Self) -> ExactFraction {
        ExactFraction(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &ExactFraction {
    type Output = ExactFraction;
    fn sub(self, rhs: Self) -> ExactFraction {
        ExactFraction(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &ExactFraction {
    type Output = ExactFraction;
    fn mul(self, rhs: Self) -> ExactFraction {
        ExactFraction(&self.0 * &rhs.0)
    }
}

impl std::ops::Div for &ExactFraction {
    type Output = ExactFraction;
    fn div(self, rhs: Self) -> ExactFraction {
        assert!(!rhs.0.is_zero(), "division by zero");
        ExactFraction(&self.0 / &rhs.0)
    }
}

impl From<u64> for ExactFraction {
    fn from(n: u64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactFraction {
    type Err = Error;

    /// Accepts `p/q` or an integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Self::new(n, d)
    }
}
