//! Extended-real weights: finite values plus positive infinity.
//!
//! Infinity encodes "the candidate set is empty" for every minimum computed by
//! this crate; no operation ever throws for emptiness, it returns infinity.

use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

/// A finite `f64` or positive infinity. Never NaN.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);

    /// Wraps a finite value. Panics on NaN or infinities coming from arithmetic
    /// gone wrong; graph loaders reject non-finite weights up front.
    pub fn finite(value: f64) -> ExtReal {
        assert!(value.is_finite(), "ExtReal::finite called with {value}");
        ExtReal(value)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// The finite value, if any.
    pub fn value(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    /// Raw `f64`, infinity included. Handy for comparisons and min-folds.
    pub fn raw(self) -> f64 {
        self.0
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self.0 <= other.0 {
            self
        } else {
            other
        }
    }

    /// True when both are finite and within `tol` of each other, or both infinite.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => (a - b).abs() <= tol,
            (None, None) => true,
            _ => false,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal(self.0 + rhs.0)
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: f64) -> ExtReal {
        ExtReal(self.0 + rhs)
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> ExtReal {
        ExtReal::finite(value)
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "inf")
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Serialized as a JSON number, or `null` for infinity.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) => serializer.serialize_f64(v),
            None => serializer.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_propagates_through_addition() {
        let inf = ExtReal::INFINITY;
        assert!((inf + ExtReal::finite(3.0)).is_infinite());
        assert!((inf + 5.0).is_infinite());
        assert_eq!((ExtReal::finite(2.0) + ExtReal::finite(3.0)).value(), Some(5.0));
    }

    #[test]
    fn approx_eq_respects_tolerance_and_infinity() {
        let tol = 1e-9;
        assert!(ExtReal::finite(1.0).approx_eq(ExtReal::finite(1.0 + 1e-10), tol));
        assert!(!ExtReal::finite(1.0).approx_eq(ExtReal::finite(1.1), tol));
        assert!(ExtReal::INFINITY.approx_eq(ExtReal::INFINITY, tol));
        assert!(!ExtReal::INFINITY.approx_eq(ExtReal::finite(1.0), tol));
    }

    #[test]
    fn min_prefers_finite() {
        assert_eq!(ExtReal::INFINITY.min(ExtReal::finite(4.0)).value(), Some(4.0));
    }
}
