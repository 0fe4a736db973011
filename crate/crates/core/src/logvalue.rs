//! Positive reals stored by their natural logarithm.
//!
//! Needed for the exponential families, whose values at the demands of
//! interest are far outside the f64 range.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

use serde::{Deserialize, Serialize};

/// A nonnegative quantity represented as `exp(ln)`, with an exact-zero flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    ln: f64,
    zero: bool,
}

/// `ln(exp(a) + exp(b))` with the larger exponent factored out.
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: f64::NEG_INFINITY, zero: true };
    pub const ONE: LogValue = LogValue { ln: 0.0, zero: false };

    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue { ln, zero: false }
        }
    }

    /// Panics on negative or NaN input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0, "LogValue::from_f64 needs a nonnegative value, got {x}");
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue { ln: x.ln(), zero: false }
        }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Linear-domain value; `+inf` when it does not fit in an f64.
    pub fn to_f64(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.ln.exp()
        }
    }

    /// `Some(value)` only when the linear value is finite and, for nonzero
    /// values, nonzero after rounding.
    pub fn to_f64_checked(&self) -> Option<f64> {
        let v = self.to_f64();
        if v.is_finite() && (self.zero || v > 0.0) {
            Some(v)
        } else {
            None
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        *self * LogValue::from_f64(factor)
    }

    /// `self / other` as a LogValue. Division by zero yields `+inf` log.
    pub fn ratio(&self, other: &LogValue) -> LogValue {
        *self / *other
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        match (self.zero, rhs.zero) {
            (true, _) => rhs,
            (_, true) => self,
            _ => LogValue::from_ln(log_sum_exp(self.ln, rhs.ln)),
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.zero || rhs.zero {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.ln + rhs.ln)
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: LogValue) -> LogValue {
        if self.zero {
            LogValue::ZERO
        } else if rhs.zero {
            LogValue { ln: f64::INFINITY, zero: false }
        } else {
            LogValue::from_ln(self.ln - rhs.ln)
        }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            _ => self.ln.partial_cmp(&other.ln),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            write!(f, "exp({})", self.ln)
        }
    }
}

/// A solver output that is either an ordinary real or a log-domain value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Magnitude {
    Real(f64),
    Log(LogValue),
}

impl Magnitude {
    /// Linear value; `+inf` when a log value does not fit in an f64.
    pub fn to_f64(&self) -> f64 {
        match self {
            Magnitude::Real(x) => *x,
            Magnitude::Log(l) => l.to_f64(),
        }
    }

    pub fn ln(&self) -> f64 {
        match self {
            Magnitude::Real(x) => x.ln(),
            Magnitude::Log(l) => l.ln(),
        }
    }

    pub fn to_log(&self) -> LogValue {
        match self {
            Magnitude::Real(x) => LogValue::from_f64(*x),
            Magnitude::Log(l) => *l,
        }
    }

    pub fn is_log(&self) -> bool {
        matches!(self, Magnitude::Log(_))
    }

    /// `self / other` as an f64; computed through logarithms when either
    /// side is a log value.
    pub fn ratio(&self, other: &Magnitude) -> f64 {
        match (self, other) {
            (Magnitude::Real(a), Magnitude::Real(b)) => a / b,
            _ => self.to_log().ratio(&other.to_log()).to_f64(),
        }
    }

    /// Comparison that works across representations.
    pub fn less_than(&self, other: &Magnitude) -> bool {
        match (self, other) {
            (Magnitude::Real(a), Magnitude::Real(b)) => a < b,
            _ => self.to_log() < other.to_log(),
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Real(x) => write!(f, "{x}"),
            Magnitude::Log(l) => write!(f, "{l}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lse_large_exponents() {
        // ln(e^1234 + e^1232) = 1232 + ln(e^2 + 1)
        let v = log_sum_exp(1234.0, 1232.0);
        assert!((v - (1232.0 + (2f64.exp() + 1.0).ln())).abs() < 1e-12);
        let big = LogValue::from_ln(1e6) + LogValue::from_ln(1e6);
        assert!((big.ln() - (1e6 + 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn zero_is_neutral() {
        let x = LogValue::from_f64(3.0);
        assert_eq!(x + LogValue::ZERO, x);
        assert!((x * LogValue::ZERO).is_zero());
        assert!(LogValue::ZERO < x);
        assert_eq!(LogValue::ZERO.to_f64(), 0.0);
    }

    #[test]
    fn arithmetic_matches_linear() {
        let a = LogValue::from_f64(2.5);
        let b = LogValue::from_f64(4.0);
        assert!(((a + b).to_f64() - 6.5).abs() < 1e-14);
        assert!(((a * b).to_f64() - 10.0).abs() < 1e-13);
        assert!(((b / a).to_f64() - 1.6).abs() < 1e-14);
        assert!(LogValue::from_ln(800.0).to_f64_checked().is_none());
    }
}
