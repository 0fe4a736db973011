//! Breakpoint sequences α_1 < α_2 < … for the exponential step family.
//!
//! Index 0 is the fixed origin α_0 = 0; cell k is (α_{k-1}, α_k].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AlphaSeq {
    /// α_k = k!
    Factorial,
    /// α_k = base^(k²)
    SuperGeometric { base: f64 },
    /// α_1, α_2, … given explicitly.
    Explicit(Vec<f64>),
}

impl AlphaSeq {
    pub fn validate(&self) -> Result<()> {
        match self {
            AlphaSeq::Factorial => Ok(()),
            AlphaSeq::SuperGeometric { base } => {
                if *base > 1.0 && base.is_finite() {
                    Ok(())
                } else {
                    Err(Error::domain(format!("super-geometric base must exceed 1, got {base}")))
                }
            }
            AlphaSeq::Explicit(v) => {
                if v.len() < 2 {
                    return Err(Error::domain("explicit alpha list needs at least two entries"));
                }
                let mut prev = 0.0;
                for &a in v {
                    if !(a > prev) || !a.is_finite() {
                        return Err(Error::domain(
                            "explicit alpha list must be positive, finite and strictly increasing",
                        ));
                    }
                    prev = a;
                }
                Ok(())
            }
        }
    }

    /// α_k, or `None` past the end of the sequence (or past f64 range).
    pub fn get(&self, k: usize) -> Option<f64> {
        if k == 0 {
            return Some(0.0);
        }
        let v = match self {
            AlphaSeq::Factorial => (1..=k).fold(1.0f64, |acc, i| acc * i as f64),
            AlphaSeq::SuperGeometric { base } => base.powf((k * k) as f64),
            AlphaSeq::Explicit(v) => return v.get(k - 1).copied(),
        };
        v.is_finite().then_some(v)
    }

    /// Number of representable terms after α_0.
    pub fn len(&self) -> usize {
        match self {
            AlphaSeq::Explicit(v) => v.len(),
            _ => (1..).take_while(|&k| self.get(k).is_some()).count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The cell index k ≥ 1 with α_{k-1} < y ≤ α_k; y = 0 maps to cell 1.
    pub fn cell(&self, y: f64) -> Result<usize> {
        if y <= 0.0 {
            return Ok(1);
        }
        let mut k = 1;
        loop {
            match self.get(k) {
                Some(a) if y <= a => return Ok(k),
                Some(_) => k += 1,
                None => return Err(Error::domain(format!("y = {y} lies beyond the last alpha breakpoint"))),
            }
        }
    }

    /// All α_k (k ≥ 1) lying in [lo, hi].
    pub fn points_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for k in 1.. {
            match self.get(k) {
                Some(a) if a <= hi => {
                    if a >= lo {
                        out.push(a)
                    }
                }
                _ => break,
            }
        }
        out
    }

    pub fn label(&self) -> String {
        match self {
            AlphaSeq::Factorial => "factorial".into(),
            AlphaSeq::SuperGeometric { base } => format!("super_geometric({base})"),
            AlphaSeq::Explicit(v) => format!("explicit({} terms)", v.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_terms() {
        let s = AlphaSeq::Factorial;
        assert_eq!(s.get(0), Some(0.0));
        assert_eq!(s.get(3), Some(6.0));
        assert_eq!(s.get(5), Some(120.0));
        assert_eq!(s.len(), 170);
        assert_eq!(s.cell(6.0).unwrap(), 3);
        assert_eq!(s.cell(6.5).unwrap(), 4);
        assert_eq!(s.cell(0.5).unwrap(), 1);
    }

    #[test]
    fn explicit_validation() {
        assert!(AlphaSeq::Explicit(vec![1.0]).validate().is_err());
        assert!(AlphaSeq::Explicit(vec![1.0, 1.0]).validate().is_err());
        assert!(AlphaSeq::Explicit(vec![1.0, 3.0, 30.0]).validate().is_ok());
        assert!(AlphaSeq::Explicit(vec![1.0, 3.0]).cell(4.0).is_err());
    }

    #[test]
    fn super_geometric_terms() {
        let s = AlphaSeq::SuperGeometric { base: 2.0 };
        assert_eq!(s.get(2), Some(16.0));
        assert_eq!(s.get(3), Some(512.0));
    }
}
