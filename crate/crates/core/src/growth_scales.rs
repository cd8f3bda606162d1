//! Order, type and convergence class of counting functions near `∞` and
//! near `0`, with the integration-by-parts identities as exact checks.
//!
//! Limits are estimated over finite windows: every `order_*`/`type_*`
//! value is the extremum over the window, not the limit itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::step::StepFunction;
use crate::trend::{self, dyadic_grid, Trend};

/// Order estimates above this are reported as `+∞`.
pub const ORDER_CAP: f64 = 64.0;

const GRID_PER_OCTAVE: usize = 16;

fn check_window(lo: f64, hi: f64) -> Result<()> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!("window [{lo}, {hi}]")));
    }
    Ok(())
}

/// Window sample points of a step function: the left end plus every jump
/// inside, where right-continuous ratios against increasing weights peak.
fn step_points(f: &StepFunction, lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    pts.extend(f.jumps().iter().map(|j| j.0).filter(|&t| lo < t && t <= hi));
    pts
}

fn cap_order(x: f64) -> ExtReal {
    if x > ORDER_CAP {
        ExtReal::PosInf
    } else {
        ExtReal::Finite(x.max(0.0))
    }
}

/// `max log(1 + f⁺(r)) / log r` over `[lo, hi]`, `lo > 1`.
pub fn order_at_infinity(f: &StepFunction, lo: f64, hi: f64) -> Result<ExtReal> {
    check_window(lo, hi)?;
    if lo <= 1.0 {
        return Err(Error::InvalidParameter("order window must lie in (1, ∞)".into()));
    }
    let v = step_points(f, lo, hi)
        .into_iter()
        .map(|r| f.eval(r).max(0.0).ln_1p() / r.ln())
        .fold(0.0, f64::max);
    Ok(cap_order(v))
}

/// Same estimator for a general function sampled on a dyadic grid.
pub fn order_at_infinity_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<ExtReal> {
    check_window(lo, hi)?;
    if lo <= 1.0 {
        return Err(Error::InvalidParameter("order window must lie in (1, ∞)".into()));
    }
    let v = dyadic_grid(lo, hi, GRID_PER_OCTAVE)
        .into_iter()
        .map(|r| f(r).max(0.0).ln_1p() / r.ln())
        .fold(0.0, f64::max);
    Ok(cap_order(v))
}

/// `max f⁺(r) / r^p` over `[lo, hi]`.
pub fn type_at(f: &StepFunction, p: f64, lo: f64, hi: f64) -> Result<f64> {
    check_window(lo, hi)?;
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("order p = {p}")));
    }
    Ok(step_points(f, lo, hi)
        .into_iter()
        .map(|r| f.eval(r).max(0.0) / r.powf(p))
        .fold(0.0, f64::max))
}

pub fn type_at_fn<F: Fn(f64) -> f64>(f: F, p: f64, lo: f64, hi: f64) -> Result<f64> {
    check_window(lo, hi)?;
    Ok(dyadic_grid(lo, hi, GRID_PER_OCTAVE)
        .into_iter()
        .map(|r| f(r).max(0.0) / r.powf(p))
        .fold(0.0, f64::max))
}

/// `min log|f(r)| / log r` over `[lo, hi] ⊂ (0, 1)`; `+∞` if `f` vanishes
/// somewhere in the window.
pub fn order_at_zero(f: &StepFunction, lo: f64, hi: f64) -> Result<ExtReal> {
    check_window(lo, hi)?;
    if hi >= 1.0 {
        return Err(Error::InvalidParameter("vanishing window must lie in (0, 1)".into()));
    }
    let mut pts = step_points(f, lo, hi);
    // left limits just before each jump
    pts.extend(f.jumps().iter().map(|j| j.0).filter(|&t| lo < t && t <= hi).map(|t| t * (1.0 - 1e-12)));
    pts.push(hi);
    let mut best = f64::INFINITY;
    for r in pts {
        let v = f.eval(r).abs();
        if v == 0.0 {
            return Ok(ExtReal::PosInf);
        }
        best = best.min(v.ln() / r.ln());
    }
    Ok(cap_order(best))
}

/// `max |f(r)| / r^p` over `[lo, hi]`.
pub fn type_at_zero(f: &StepFunction, p: f64, lo: f64, hi: f64) -> Result<f64> {
    check_window(lo, hi)?;
    let mut pts = vec![lo, hi];
    for &(t, _) in f.jumps() {
        if lo < t && t <= hi {
            pts.push(t);
            pts.push(t * (1.0 - 1e-12));
        }
    }
    Ok(pts
        .into_iter()
        .filter(|&r| r >= lo)
        .map(|r| f.eval(r).abs() / r.powf(p))
        .fold(0.0, f64::max))
}

/// Antiderivative of `t^{−p−1}`.
fn inv_power_anti(p: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| if p == 0.0 { t.ln() } else { -t.powf(-p) / p }
}

/// `∫_a^b |f(t)| t^{−p−1} dt`, exact.
pub fn weighted_integral(f: &StepFunction, p: f64, a: f64, b: f64) -> f64 {
    f.integrate(a, b, f64::abs, inv_power_anti(p))
}

/// `∫_(a, b] t^{−p} df(t)`, exact.
pub fn stieltjes_inverse_power(f: &StepFunction, p: f64, a: f64, b: f64) -> f64 {
    f.stieltjes(a, b, |t| t.powf(-p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub p: f64,
    /// Value of the integral up to the largest radius.
    pub value: f64,
    /// Partial integrals over dyadic upper limits.
    pub trace: Vec<(f64, f64)>,
    pub slope: f64,
    pub verdict: Trend,
}

/// `∫_{r0}^{R} |f(t)| / t^{p+1} dt` over dyadic `R` with a growth verdict.
pub fn convergence_integral_inf(f: &StepFunction, p: f64, r0: f64, r_max: f64) -> Result<ConvergenceReport> {
    check_window(r0, r_max)?;
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("order p = {p}")));
    }
    let trace: Vec<(f64, f64)> = dyadic_grid(2.0 * r0, r_max, 4)
        .into_iter()
        .map(|r| (r, weighted_integral(f, p, r0, r)))
        .collect();
    let value = weighted_integral(f, p, r0, r_max);
    let rep = trend::trend(trace);
    Ok(ConvergenceReport {
        p,
        value,
        trace: rep.trace,
        slope: rep.slope,
        verdict: rep.verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Identity {
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
}

impl Identity {
    fn new(lhs: f64, rhs: f64) -> Self {
        Identity {
            lhs,
            rhs,
            defect: (lhs - rhs).abs(),
        }
    }

    /// Agreement to `tol` relative to the size of the terms.
    pub fn holds(&self, tol: f64) -> bool {
        self.defect <= tol * self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

/// `∫_(r, R] df/t^p = f(R)/R^p − f(r)/r^p + p ∫_r^R f/t^{p+1} dt` on the
/// truncation `[r, R]`.
pub fn parts_identity_inf(f: &StepFunction, p: f64, r: f64, r_max: f64) -> Result<Identity> {
    check_window(r, r_max)?;
    let lhs = stieltjes_inverse_power(f, p, r, r_max);
    let boundary = f.eval(r_max) / r_max.powf(p) - f.eval(r) / r.powf(p);
    let tail = -f.integrate(r, r_max, |v| v, |t| t.powf(-p));
    Ok(Identity::new(lhs, boundary + tail))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    pub p: f64,
    pub r0: f64,
    /// `f(0) = lim_{r→0+} f(r)`.
    pub f0: f64,
    /// `∫_0^{r0} |f(t)| / t^{p+1} dt`.
    pub integral: ExtReal,
    /// `∫_(0, r0] log t df(t)`.
    pub log_stieltjes: f64,
    /// `∫_(0, r0] df(t) / t^p`.
    pub inverse_power_stieltjes: f64,
    /// `∫_0^{r0} (f − f(0)) t^{−p−1} dt` against its parts form.
    pub parts: Identity,
}

/// Integrals around `0` of a step function on `(0, r0]`.
pub fn convergence_integral_zero(f: &StepFunction, p: f64, r0: f64) -> Result<ZeroReport> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::InvalidParameter(format!("r0 = {r0}")));
    }
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("order p = {p}")));
    }
    let f0 = f.value_at_zero();
    let first = f.jumps().iter().map(|j| j.0).find(|&t| t > 0.0).unwrap_or(f64::INFINITY);
    let tail = if first < r0 {
        weighted_integral(f, p, first, r0)
    } else {
        0.0
    };
    let integral = if f0 == 0.0 {
        ExtReal::Finite(tail)
    } else {
        ExtReal::PosInf
    };
    let log_stieltjes = f.stieltjes(0.0, r0, f64::ln);
    let inverse_power_stieltjes = stieltjes_inverse_power(f, p, 0.0, r0);
    let parts = parts_identity_zero(f, p, r0)?;
    Ok(ZeroReport {
        p,
        r0,
        f0,
        integral,
        log_stieltjes,
        inverse_power_stieltjes,
        parts,
    })
}

/// For `p > 0`:
/// `∫_0^{r0} (f − f(0))/t^{p+1} dt = −(f(r0) − f(0))/(p r0^p) + (1/p) ∫_(0,r0] df/t^p`;
/// for `p = 0`:
/// `∫_0^{r0} (f − f(0))/t dt = (f(r0) − f(0)) log r0 − ∫_(0,r0] log t df`.
pub fn parts_identity_zero(f: &StepFunction, p: f64, r0: f64) -> Result<Identity> {
    if !(r0 > 0.0) || !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("p = {p}, r0 = {r0}")));
    }
    let f0 = f.value_at_zero();
    let shifted = StepFunction::from_jumps(0.0, f.jumps().iter().copied().filter(|j| j.0 > 0.0).collect())?;
    let first = shifted.jumps().first().map_or(r0, |j| j.0.min(r0));
    let lhs = shifted.integrate(first, r0, |v| v, inv_power_anti(p));
    let rise = f.eval(r0) - f0;
    let rhs = if p == 0.0 {
        rise * r0.ln() - f.stieltjes(0.0, r0, f64::ln)
    } else {
        -rise / (p * r0.powf(p)) + stieltjes_inverse_power(f, p, 0.0, r0) / p
    };
    Ok(Identity::new(lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogLimit {
    pub trace: Vec<(f64, f64)>,
    /// `max |f(r) log r|` over the smallest decade of the window.
    pub tail_max: f64,
}

/// Trace of `f(r) log r` as `r ↓ r_min`.
pub fn log_vanishing_trace(f: &StepFunction, r_min: f64, r0: f64) -> Result<LogLimit> {
    check_window(r_min, r0)?;
    let trace: Vec<(f64, f64)> = dyadic_grid(r_min, r0, 4)
        .into_iter()
        .map(|r| (r, f.eval(r) * r.ln()))
        .collect();
    let tail_max = trace
        .iter()
        .filter(|p| p.0 <= 10.0 * r_min)
        .map(|p| p.1.abs())
        .fold(0.0, f64::max);
    Ok(LogLimit { trace, tail_max })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub window: (f64, f64),
    pub order_estimate: ExtReal,
    pub p: f64,
    pub type_estimate: f64,
    pub convergence: ConvergenceReport,
}

pub fn growth_report(f: &StepFunction, p: f64, lo: f64, hi: f64) -> Result<GrowthReport> {
    Ok(GrowthReport {
        window: (lo, hi),
        order_estimate: order_at_infinity(f, lo, hi)?,
        p,
        type_estimate: type_at(f, p, lo, hi)?,
        convergence: convergence_integral_inf(f, p, lo, hi)?,
    })
}
