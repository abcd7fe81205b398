//! Extended reals for divergence arithmetic.
//!
//! Multiplication follows the measure-theoretic convention 0·(±∞) = 0 and
//! a·(±∞) = ±∞ for a > 0 (sign flipped for a < 0). Adding +∞ and −∞ is an
//! error, never a value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PlusInfinity,
    MinusInfinity,
}

pub use ExtendedReal::{MinusInfinity, PlusInfinity};

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal::Finite(0.0);

    /// Maps ±∞ doubles onto the infinite variants. NaN is rejected.
    pub fn from_f64(x: f64) -> Option<Self> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(PlusInfinity)
        } else if x == f64::NEG_INFINITY {
            Some(MinusInfinity)
        } else {
            Some(ExtendedReal::Finite(x))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtendedReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// As a double, with ±∞ mapped to the IEEE infinities.
    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::Finite(x) => x,
            PlusInfinity => f64::INFINITY,
            MinusInfinity => f64::NEG_INFINITY,
        }
    }

    /// a·self with 0·(±∞) = 0.
    pub fn scale(&self, a: f64) -> Self {
        match *self {
            ExtendedReal::Finite(x) => ExtendedReal::Finite(a * x),
            _ if a == 0.0 => ExtendedReal::ZERO,
            PlusInfinity if a > 0.0 => PlusInfinity,
            MinusInfinity if a < 0.0 => PlusInfinity,
            _ => MinusInfinity,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (*self, *other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Ok(ExtendedReal::Finite(a + b)),
            (PlusInfinity, MinusInfinity) | (MinusInfinity, PlusInfinity) => Err(Error::IllFormedInfinitySum),
            (PlusInfinity, _) | (_, PlusInfinity) => Ok(PlusInfinity),
            _ => Ok(MinusInfinity),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(-1.0))
    }

    /// Natural log on [0, ∞]: ln 0 = −∞, ln ∞ = ∞.
    pub fn ln(&self) -> Result<Self> {
        match *self {
            ExtendedReal::Finite(x) if x < 0.0 => Err(Error::NegativeDivergenceValue(x)),
            ExtendedReal::Finite(x) if x == 0.0 => Ok(MinusInfinity),
            ExtendedReal::Finite(x) => Ok(ExtendedReal::Finite(x.ln())),
            PlusInfinity => Ok(PlusInfinity),
            MinusInfinity => Err(Error::NegativeDivergenceValue(f64::NEG_INFINITY)),
        }
    }

    /// Applies a monotone map to finite values, sending ±∞ to the given limits.
    pub fn map_finite(&self, f: impl Fn(f64) -> f64, at_plus: Self, at_minus: Self) -> Self {
        match *self {
            ExtendedReal::Finite(x) => ExtendedReal::from_f64(f(x)).unwrap_or(at_plus),
            PlusInfinity => at_plus,
            MinusInfinity => at_minus,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        ExtendedReal::from_f64(x).expect("NaN is not an extended real")
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtendedReal {
    /// `inf`, `-inf`, or the value with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExtendedReal::Finite(x) => write!(f, "{x:.16e}"),
            PlusInfinity => f.write_str("inf"),
            MinusInfinity => f.write_str("-inf"),
        }
    }
}

impl FromStr for ExtendedReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(PlusInfinity),
            "-inf" => Ok(MinusInfinity),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(ExtendedReal::Finite)
                .ok_or_else(|| Error::ParameterOutOfRange(format!("not an extended real: {s:?}"))),
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
