//! Extended reals `[−∞, +∞]` for values of potentials and growth estimates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Maps a float onto the extended line; NaN is not representable.
    pub fn from_f64(x: f64) -> Option<Self> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(ExtReal::PosInf)
        } else if x == f64::NEG_INFINITY {
            Some(ExtReal::NegInf)
        } else {
            Some(ExtReal::Finite(x))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// `max(x, 0)`, so that `(−∞)⁺ = 0`.
    pub fn positive_part(self) -> f64 {
        match self {
            ExtReal::NegInf => 0.0,
            ExtReal::Finite(x) => x.max(0.0),
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// Sum with the convention that `−∞` absorbs finite values; `+∞ + (−∞)` is undefined.
    pub fn checked_add(self, o: ExtReal) -> Option<ExtReal> {
        use ExtReal::*;
        match (self, o) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    /// Scaling by a real; `0 · (±∞) = 0`.
    pub fn scale(self, c: f64) -> ExtReal {
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(c * x),
            _ if c == 0.0 => ExtReal::Finite(0.0),
            ExtReal::NegInf if c > 0.0 => ExtReal::NegInf,
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf if c > 0.0 => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x).expect("NaN is not an extended real")
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;
    fn add(self, x: f64) -> ExtReal {
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a + x),
            e => e,
        }
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;
    fn mul(self, c: f64) -> ExtReal {
        self.scale(c)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => f.write_str("+inf"),
        }
    }
}

/// Finite values as JSON numbers, infinities as the strings `"-inf"`/`"+inf"`.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_rules() {
        assert_eq!(ExtReal::NegInf + 3.0, ExtReal::NegInf);
        assert_eq!(ExtReal::NegInf.checked_add(ExtReal::PosInf), None);
        assert_eq!(ExtReal::NegInf * -2.0, ExtReal::PosInf);
        assert_eq!(ExtReal::NegInf * 0.0, ExtReal::Finite(0.0));
        assert_eq!(ExtReal::NegInf.positive_part(), 0.0);
        assert!(ExtReal::NegInf < ExtReal::Finite(-1e300));
        assert_eq!(ExtReal::from_f64(f64::NAN), None);
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&ExtReal::NegInf).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::to_string(&ExtReal::Finite(0.5)).unwrap(), "0.5");
    }
}
