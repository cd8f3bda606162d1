//! Right-continuous step functions on `[0, ∞)` with exact Stieltjes and
//! Lebesgue integration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepRepr", into = "StepRepr")]
pub struct StepFunction {
    offset: f64,
    jumps: Vec<(f64, f64)>,
    /// `cum[k]` is the value just after jump `k`.
    cum: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    #[serde(default)]
    offset: f64,
    jumps: Vec<(f64, f64)>,
}

impl TryFrom<StepRepr> for StepFunction {
    type Error = Error;
    fn try_from(r: StepRepr) -> Result<Self> {
        StepFunction::new(r.offset, r.jumps)
    }
}

impl From<StepFunction> for StepRepr {
    fn from(s: StepFunction) -> Self {
        StepRepr {
            offset: s.offset,
            jumps: s.jumps,
        }
    }
}

impl StepFunction {
    /// `offset` is the value just before the first jump; jump points must be
    /// finite, nonnegative and strictly increasing.
    pub fn new(offset: f64, jumps: Vec<(f64, f64)>) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::InvalidStepFunction("non-finite offset".into()));
        }
        for &(t, s) in &jumps {
            if !(t.is_finite() && s.is_finite() && t >= 0.0) {
                return Err(Error::InvalidStepFunction(format!("bad jump ({t}, {s})")));
            }
        }
        if jumps.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidStepFunction("jump points not strictly increasing".into()));
        }
        Ok(StepFunction::build(offset, jumps))
    }

    fn build(offset: f64, jumps: Vec<(f64, f64)>) -> Self {
        let cum = jumps
            .iter()
            .scan(offset, |acc, j| {
                *acc += j.1;
                Some(*acc)
            })
            .collect();
        StepFunction { offset, jumps, cum }
    }

    fn value_after(&self, n: usize) -> f64 {
        if n == 0 {
            self.offset
        } else {
            self.cum[n - 1]
        }
    }

    /// Builds from unsorted jumps, merging coincident points and dropping zero jumps.
    pub fn from_jumps(offset: f64, mut jumps: Vec<(f64, f64)>) -> Result<Self> {
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(jumps.len());
        for (t, s) in jumps {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += s,
                _ => merged.push((t, s)),
            }
        }
        merged.retain(|&(_, s)| s != 0.0);
        StepFunction::new(offset, merged)
    }

    pub fn zero() -> Self {
        StepFunction::build(0.0, Vec::new())
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn jumps(&self) -> &[(f64, f64)] {
        &self.jumps
    }

    /// `f(r) = offset + Σ_{t_k ≤ r} s_k`.
    pub fn eval(&self, r: f64) -> f64 {
        self.value_after(self.jumps.partition_point(|&(t, _)| t <= r))
    }

    /// Left limit `f(r−)`.
    pub fn eval_left(&self, r: f64) -> f64 {
        self.value_after(self.jumps.partition_point(|&(t, _)| t < r))
    }

    /// `lim_{r→0+} f(r) = f(0)` by right continuity.
    pub fn value_at_zero(&self) -> f64 {
        self.eval(0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        StepFunction::build(c * self.offset, self.jumps.iter().map(|&(t, s)| (t, c * s)).collect())
    }

    /// Constant pieces `(lo, hi, value)` covering `[a, b]`.
    pub fn pieces(&self, a: f64, b: f64) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        if !(a < b) {
            return out;
        }
        let mut lo = a;
        let mut v = self.eval(a);
        let start = self.jumps.partition_point(|&(t, _)| t <= a);
        for &(t, s) in &self.jumps[start..] {
            if t >= b {
                break;
            }
            out.push((lo, t, v));
            lo = t;
            v += s;
        }
        out.push((lo, b, v));
        out
    }

    /// `∫_{(a, b]} φ(t) df(t) = Σ_{a < t_k ≤ b} s_k φ(t_k)`.
    pub fn stieltjes<P: Fn(f64) -> f64>(&self, a: f64, b: f64, phi: P) -> f64 {
        let lo = self.jumps.partition_point(|&(t, _)| t <= a);
        let hi = self.jumps.partition_point(|&(t, _)| t <= b).max(lo);
        self.jumps[lo..hi]
            .iter()
            .map(|&(t, s)| s * phi(t))
            .sum()
    }

    /// `∫_a^b g(f(t)) w(t) dt` given an antiderivative `w_anti` of `w`.
    pub fn integrate<G, W>(&self, a: f64, b: f64, g: G, w_anti: W) -> f64
    where
        G: Fn(f64) -> f64,
        W: Fn(f64) -> f64,
    {
        if a > b {
            return -self.integrate(b, a, g, w_anti);
        }
        self.pieces(a, b)
            .into_iter()
            .map(|(lo, hi, v)| {
                let gv = g(v);
                if gv == 0.0 {
                    0.0
                } else {
                    gv * (w_anti(hi) - w_anti(lo))
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_is_right_continuous() {
        let f = StepFunction::new(0.5, vec![(1.0, 1.0), (2.0, -3.0)]).unwrap();
        assert_eq!(f.eval(0.0), 0.5);
        assert_eq!(f.eval(1.0), 1.5);
        assert_eq!(f.eval_left(1.0), 0.5);
        assert_eq!(f.eval(2.5), -1.5);
    }

    #[test]
    fn jump_at_zero_belongs_to_zero() {
        let f = StepFunction::new(0.0, vec![(0.0, 2.0)]).unwrap();
        assert_eq!(f.value_at_zero(), 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(StepFunction::new(0.0, vec![(1.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(StepFunction::new(0.0, vec![(-1.0, 1.0)]).is_err());
        assert!(StepFunction::new(f64::NAN, vec![]).is_err());
        let f = StepFunction::from_jumps(0.0, vec![(2.0, 1.0), (1.0, 1.0), (2.0, -1.0)]).unwrap();
        assert_eq!(f.jumps(), &[(1.0, 1.0)]);
    }

    #[test]
    fn exact_integrals() {
        let f = StepFunction::new(0.0, vec![(1.0, 1.0), (2.0, 1.0)]).unwrap();
        // ∫_0^3 f dt = 1·1 + 2·1
        assert_eq!(f.integrate(0.0, 3.0, |v| v, |t| t), 3.0);
        assert_eq!(f.stieltjes(0.0, 2.0, |t| t * t), 5.0);
        assert_eq!(f.stieltjes(1.0, 2.0, |t| t), 2.0);
        assert_eq!(f.integrate(3.0, 0.0, |v| v, |t| t), -3.0);
    }

    #[test]
    fn json_round_trip() {
        let f: StepFunction = serde_json::from_str(r#"{"offset": 1.0, "jumps": [[0.5, 2.0]]}"#).unwrap();
        assert_eq!(f.eval(1.0), 3.0);
        assert!(serde_json::from_str::<StepFunction>(r#"{"jumps": [[2.0, 1.0], [1.0, 1.0]]}"#).is_err());
    }
}
