//! Growth indicators, angular densities, principal-value kernel integrals
//! and completely-regular-growth diagnostics along ray systems. Limits are
//! estimated on finite radius windows.

use std::cell::RefCell;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::balayage::BalayageCharge;
use crate::charges::AtomicCharge;
use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::ray_geometry::RaySystem;
use crate::step::StepFunction;
use crate::subharmonic::{kernel_kq, Evaluable};
use crate::trend::{self, dyadic_grid, fit_limit, LimitFit, Trend};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorEstimate {
    pub theta: f64,
    pub p: f64,
    pub value: f64,
    pub argmax: f64,
    pub trace: Vec<(f64, f64)>,
}

/// `max v(r e^{iθ}) / r^p` over a dyadic grid on `[lo, hi]`, 8 points per
/// octave.
pub fn indicator_estimate<V: Evaluable + ?Sized>(v: &V, theta: f64, p: f64, lo: f64, hi: f64) -> Result<IndicatorEstimate> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("order {p} must be positive")));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!("window [{lo}, {hi}]")));
    }
    let trace: Vec<(f64, f64)> = dyadic_grid(lo, hi, 8)
        .into_iter()
        .map(|r| (r, v.value(Complex64::from_polar(r, theta)).to_f64() / r.powf(p)))
        .collect();
    let (argmax, value) = trace
        .iter()
        .copied()
        .fold((lo, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    Ok(IndicatorEstimate {
        theta,
        p,
        value,
        argmax,
        trace,
    })
}

fn pv_kernel(z: Complex64, q: u32, t: f64) -> f64 {
    ((z / t).powu(q + 1) / (z - t)).re
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvEstimate {
    pub value: f64,
    /// True when `z` is on the positive axis and the value is a principal value.
    pub principal_value: bool,
    /// Excision radii and the corresponding excised integrals.
    pub excised: Vec<(f64, f64)>,
    /// Last change between the two highest extrapolation levels.
    pub change: f64,
}

const PV_TOL: Tolerance = Tolerance {
    abs: 1e-12,
    rel: 1e-13,
    max_segments: 20_000,
};

/// `∫_0^∞ Re z^{q+1}/(t^{q+1}(z − t)) n(t) dt` over the pieces of `n`,
/// with `(x − ε, x + ε)` removed when given.
fn excised_integral(n: &StepFunction, q: u32, z: Complex64, hole: Option<(f64, f64)>) -> Result<f64> {
    let last = n.jumps().last().map_or(0.0, |j| j.0);
    let mut pieces = n.pieces(0.0, last.max(1.0));
    pieces.push((last.max(1.0), f64::INFINITY, n.eval(last.max(1.0))));
    let mut total = 0.0;
    for (a, b, c) in pieces {
        if c == 0.0 || a >= b {
            continue;
        }
        let mut spans = vec![(a, b)];
        if let Some((l, h)) = hole {
            spans = vec![(a, b.min(l)), (a.max(h), b)];
        }
        for (lo, hi) in spans {
            if lo < hi {
                total += c * quad::integrate(|t| pv_kernel(z, q, t), lo, hi, PV_TOL)?.value;
            }
        }
    }
    Ok(total)
}

/// Kernel integral of a step function by quadrature. Off the positive
/// axis it is an ordinary integral; at `z = x > 0` it is a principal value
/// from symmetric excisions `ε, ε/2, …, ε/16` with two Richardson stages
/// (the excision error expands in odd powers of `ε`).
pub fn pv_kernel_integral(n: &StepFunction, q: u32, z: Complex64, eps: f64) -> Result<PvEstimate> {
    if n.value_at_zero() != 0.0 {
        return Err(Error::HypothesisViolated("n(0) must vanish".into()));
    }
    if !(z.im == 0.0 && z.re > 0.0) {
        let value = excised_integral(n, q, z, None)?;
        return Ok(PvEstimate {
            value,
            principal_value: false,
            excised: Vec::new(),
            change: 0.0,
        });
    }
    let x = z.re;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("excision {eps}")));
    }
    let gap = n.jumps().iter().map(|j| (j.0 - x).abs()).fold(f64::INFINITY, f64::min);
    if gap == 0.0 {
        return Err(Error::Singularity(x));
    }
    let e0 = eps.min(0.25 * gap).min(0.25 * x);
    let mut excised = Vec::with_capacity(5);
    for k in 0..5 {
        let e = e0 / f64::from(1u32 << k);
        excised.push((e, excised_integral(n, q, z, Some((x - e, x + e)))?));
    }
    let i: Vec<f64> = excised.iter().map(|p| p.1).collect();
    let r1: Vec<f64> = (0..4).map(|k| 2.0 * i[k + 1] - i[k]).collect();
    let r2: Vec<f64> = (0..3).map(|k| (8.0 * r1[k + 1] - r1[k]) / 7.0).collect();
    let value = r2[2];
    let change = (r2[2] - r2[1]).abs();
    if !(change <= 1e-6 * value.abs().max(1.0)) {
        return Err(Error::SingularityUnresolved(change));
    }
    Ok(PvEstimate {
        value,
        principal_value: true,
        excised,
        change,
    })
}

/// The same integral after integration by parts: `Σ s_k K_q(t_k, z)`.
pub fn pv_kernel_stieltjes(n: &StepFunction, q: u32, z: Complex64) -> Result<f64> {
    if n.value_at_zero() != 0.0 {
        return Err(Error::HypothesisViolated("n(0) must vanish".into()));
    }
    let q = i32::try_from(q).map_err(|_| Error::InvalidParameter("genus too large".into()))?;
    n.jumps()
        .iter()
        .map(|&(t, s)| Ok(s * kernel_kq(Complex64::new(t, 0.0), z, q)?))
        .sum()
}

/// `⨍_1^∞ Re z^{q+1}/(t^{q+1}(z − t)) n(t) dt = K_q(1, z) n(1) + Σ_{t_k > 1} s_k K_q(t_k, z)`.
fn tail_kernel_sum(n: &StepFunction, q: i32, z: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let mut s = n.eval(1.0) * kernel_kq(one, z, q)?;
    let start = n.jumps().partition_point(|j| j.0 <= 1.0);
    for &(t, m) in &n.jumps()[start..] {
        s += m * kernel_kq(Complex64::new(t, 0.0), z, q)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrgConfig {
    pub r_lo: f64,
    pub r_hi: f64,
    pub per_octave: usize,
    /// Largest spread allowed among kept values.
    pub tol: f64,
    /// Largest fraction of radii that may be dropped as exceptional.
    pub drop: f64,
}

impl Default for CrgConfig {
    fn default() -> Self {
        CrgConfig {
            r_lo: 128.0,
            r_hi: 1024.0,
            per_octave: 8,
            tol: 0.1,
            drop: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayRecord {
    pub ray_index: usize,
    pub theta: f64,
    /// Representation values `r^{[p]+1−p} Σ_j' ⨍ … n_j'(t) dt` over the grid.
    pub trace: Vec<(f64, f64)>,
    pub fit: LimitFit,
    /// `n_j(r) / r^p` over the grid.
    pub density_trace: Vec<(f64, f64)>,
    pub density_fit: LimitFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrgReport {
    pub p: f64,
    pub q: u32,
    pub rays: Vec<RayRecord>,
    /// Largest fraction of radii excluded on any ray.
    pub exceptional_density: f64,
    /// For integer `p`: `Σ_j e^{−ipθ_j} ∫_{(1, r]} t^{−p} dn_j(t)`.
    #[serde(serialize_with = "crate::complex_json::opt_trace::serialize")]
    pub lindelof_trace: Option<Vec<(f64, Complex64)>>,
    pub lindelof_bounded: Option<bool>,
    /// Every ray has a stable limit.
    pub regular: bool,
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Dyadic grid with each radius moved by a deterministic fraction of a
/// step, so that sampled radii avoid lattice-aligned atoms.
fn jittered_grid(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let m = per_octave.max(1) as f64;
    dyadic_grid(lo, hi, per_octave)
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            let u = (k as f64 * GOLDEN).fract() - 0.5;
            (r * (0.5 * u / m).exp2()).clamp(lo, hi)
        })
        .collect()
}

/// Diagnostics of completely regular growth from the distribution
/// functions `n_j` of a balayage on the rays of `S`: the representation
/// values on each ray (each term taken along its own ray, i.e. with
/// relative angle `θ_j − θ_j'`), their limit fits, angular densities and,
/// for integer `p`, the Lindelöf trace.
pub fn crg_on_rays(s: &RaySystem, n: &[StepFunction], p: f64, cfg: &CrgConfig) -> Result<CrgReport> {
    if n.len() != s.len() {
        return Err(Error::InvalidParameter(format!("{} counting functions for {} rays", n.len(), s.len())));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("order {p} must be positive")));
    }
    if !(cfg.r_lo > 1.0 && cfg.r_hi > cfg.r_lo && cfg.r_hi.is_finite()) {
        return Err(Error::InvalidParameter(format!("window [{}, {}] must lie beyond 1", cfg.r_lo, cfg.r_hi)));
    }
    if !(0.0..1.0).contains(&cfg.drop) || !(cfg.tol > 0.0) {
        return Err(Error::InvalidParameter("drop must lie in [0, 1) and tol be positive".into()));
    }
    let q = p.floor() as u32;
    let thetas = s.thetas();
    let grid = jittered_grid(cfg.r_lo, cfg.r_hi, cfg.per_octave);
    let mut rays = Vec::with_capacity(s.len());
    for (j, &theta) in thetas.iter().enumerate() {
        let mut trace = Vec::with_capacity(grid.len());
        for &r0 in &grid {
            let mut r = r0;
            while n[j].jumps().binary_search_by(|x| x.0.total_cmp(&r)).is_ok() {
                r *= 1.0 + 1e-9;
            }
            let mut v = 0.0;
            for (jp, nj) in n.iter().enumerate() {
                let z = Complex64::from_polar(r, theta - thetas[jp]);
                v += tail_kernel_sum(nj, q as i32, z)?;
            }
            trace.push((r, v / r.powf(p)));
        }
        let fit = fit_limit(&trace, cfg.drop, cfg.tol);
        let density_trace: Vec<(f64, f64)> = grid.iter().map(|&r| (r, n[j].eval(r) / r.powf(p))).collect();
        let density_fit = fit_limit(&density_trace, cfg.drop, cfg.tol);
        rays.push(RayRecord {
            ray_index: j,
            theta,
            trace,
            fit,
            density_trace,
            density_fit,
        });
    }
    let (lindelof_trace, lindelof_bounded) = if p.fract() == 0.0 {
        let pi = p as i32;
        let tr: Vec<(f64, Complex64)> = grid
            .iter()
            .map(|&r| {
                thetas
                    .iter()
                    .zip(n)
                    .map(|(&th, nj)| Complex64::from_polar(1.0, -p * th) * nj.stieltjes(1.0, r, |t| t.powi(-pi)))
                    .sum::<Complex64>()
            })
            .zip(&grid)
            .map(|(v, &r)| (r, v))
            .collect();
        let rep = trend::relative_trend(tr.iter().map(|&(r, v)| (r, v.norm())).collect());
        (Some(tr), Some(rep.verdict == Trend::Bounded))
    } else {
        (None, None)
    };
    let exceptional_density = rays.iter().map(|r| r.fit.exceptional_density).fold(0.0, f64::max);
    let regular = rays.iter().all(|r| r.fit.stable);
    Ok(CrgReport {
        p,
        q,
        rays,
        exceptional_density,
        lindelof_trace,
        lindelof_bounded,
        regular,
    })
}

/// Distribution functions `n_j(t) = ν^bal((0, t] on ray j)`: exact steps
/// for charges kept on the rays, otherwise increments sampled on a
/// geometric grid (`per_octave` points) up to `t_max`.
pub fn ray_counting_functions(bal: &BalayageCharge, t_max: f64, per_octave: usize) -> Result<Vec<StepFunction>> {
    let s = bal.rays();
    let mut out = Vec::with_capacity(s.len());
    for j in 0..s.len() {
        let mut jumps: Vec<(f64, f64)> = Vec::new();
        if bal.swept().is_empty() {
            for a in bal.kept().atoms() {
                if a.z.norm() > 0.0 && s.ray_index(a.z.arg()) == Some(j) {
                    jumps.push((a.z.norm(), a.mass));
                }
            }
            out.push(StepFunction::from_jumps(0.0, jumps)?);
        } else {
            let grid = dyadic_grid(t_max * 2f64.powi(-40), t_max, per_octave);
            let mut prev = 0.0;
            for t in grid {
                let f = bal.ray_distribution(j, t);
                if f != prev {
                    jumps.push((t, f - prev));
                    prev = f;
                }
            }
            out.push(StepFunction::new(0.0, jumps)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exgr2Report {
    /// `(t, [b_0, b_1, b_2, b_3])`.
    pub b: Vec<(f64, [f64; 4])>,
    /// `(r, L(r))` with `L(r) = ∫_1^r ∫_0^∞ Σ_k i^{k+1}(n_k + n_{k+1})(s) s ds dt / (t (s⁴ + t²))`.
    #[serde(serialize_with = "crate::complex_json::trace::serialize")]
    pub l_trace: Vec<(f64, Complex64)>,
    pub l_fit_re: LimitFit,
    pub l_fit_im: LimitFit,
}

fn integrate_fallible<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, breaks: &[f64], tol: Tolerance) -> Result<f64> {
    let err = RefCell::new(None);
    let v = quad::integrate_with_breaks(
        |t| match f(t) {
            Ok(x) => x,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        breaks,
        tol,
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(v?.value)
}

const EXGR2_TOL: Tolerance = Tolerance {
    abs: 1e-12,
    rel: 1e-10,
    max_segments: 20_000,
};

/// `b_k(t) = 2 ∫_0^∞ (n_k + n_{k+1})(s) s / (s⁴ + t²) ds`, `n_4 = n_0`,
/// for counting functions on the four bisectors. `breaks` lists their
/// discontinuities.
pub fn exgr2_b(n: [&dyn Fn(f64) -> f64; 4], breaks: &[f64], t: f64) -> Result<[f64; 4]> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t = {t}")));
    }
    let mut br = breaks.to_vec();
    br.push(t.sqrt());
    let mut out = [0.0; 4];
    for (k, b) in out.iter_mut().enumerate() {
        let (a, c) = (n[k], n[(k + 1) % 4]);
        *b = 2.0 * quad::integrate_with_breaks(|s| (a(s) + c(s)) * s / (s.powi(4) + t * t), 0.0, f64::INFINITY, &br, EXGR2_TOL)?.value;
    }
    Ok(out)
}

/// `b_k` over the values `ts` and the trace of `L(r)` over `radii`, with
/// limit fits of `L`.
pub fn exgr2_functionals(
    n: [&dyn Fn(f64) -> f64; 4],
    breaks: &[f64],
    ts: &[f64],
    radii: &[f64],
    tol: f64,
) -> Result<Exgr2Report> {
    if radii.iter().any(|&r| !(r > 1.0 && r.is_finite())) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radii must increase and exceed 1".into()));
    }
    let b = ts.iter().map(|&t| Ok((t, exgr2_b(n, breaks, t)?))).collect::<Result<Vec<_>>>()?;
    // Σ i^{k+1} b_k = (b_3 − b_1) + i (b_0 − b_2)
    let part = |t: f64, im: bool| -> Result<f64> {
        let bk = exgr2_b(n, breaks, t)?;
        let v = if im { bk[0] - bk[2] } else { bk[3] - bk[1] };
        Ok(v / (2.0 * t))
    };
    let outer = Tolerance {
        abs: 1e-10,
        rel: 1e-8,
        max_segments: 2_000,
    };
    let mut l_trace = Vec::with_capacity(radii.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lo = 1.0;
    for &r in radii {
        let re = integrate_fallible(|u| Ok(part(u.exp(), false)? * u.exp()), f64::ln(lo), r.ln(), &[], outer)?;
        let im = integrate_fallible(|u| Ok(part(u.exp(), true)? * u.exp()), f64::ln(lo), r.ln(), &[], outer)?;
        acc += Complex64::new(re, im);
        l_trace.push((r, acc));
        lo = r;
    }
    let re: Vec<(f64, f64)> = l_trace.iter().map(|&(r, v)| (r, v.re)).collect();
    let im: Vec<(f64, f64)> = l_trace.iter().map(|&(r, v)| (r, v.im)).collect();
    Ok(Exgr2Report {
        b,
        l_fit_re: fit_limit(&re, 0.05, tol),
        l_fit_im: fit_limit(&im, 0.05, tol),
        l_trace,
    })
}

fn in_closed_angle(z: Complex64, alpha: f64, beta: f64) -> bool {
    if beta - alpha >= TAU - 1e-12 || z == Complex64::new(0.0, 0.0) {
        return true;
    }
    let off = (z.arg() - alpha).rem_euclid(TAU);
    off <= beta - alpha + 1e-12 || off >= TAU - 1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularDensity {
    pub p: f64,
    pub trace: Vec<(f64, f64)>,
    pub fit: LimitFit,
    /// For integer `p`: `Σ_{1 ≤ |z| ≤ r} m / z^p` over the angle.
    #[serde(serialize_with = "crate::complex_json::opt_trace::serialize")]
    pub lindelof_trace: Option<Vec<(f64, Complex64)>>,
}

/// `ν(D̄(r) ∩ ∠[α, β]) / r^p` over the given radii with a limit fit.
pub fn angular_density(nu: &AtomicCharge, alpha: f64, beta: f64, p: f64, radii: &[f64], tol: f64) -> Result<AngularDensity> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("order {p} must be positive")));
    }
    if !(beta > alpha && beta - alpha <= TAU + 1e-12) {
        return Err(Error::InvalidSector(alpha, beta));
    }
    let inside = nu.restrict(|z| in_closed_angle(z, alpha, beta));
    let count = inside.radial_counting(false);
    let trace: Vec<(f64, f64)> = radii.iter().map(|&r| (r, count.eval(r) / r.powf(p))).collect();
    let fit = fit_limit(&trace, 0.05, tol);
    let lindelof_trace = (p.fract() == 0.0 && p <= f64::from(u32::MAX)).then(|| {
        let k = p as u32;
        radii
            .iter()
            .map(|&r| {
                let s: Complex64 = inside
                    .atoms()
                    .iter()
                    .filter(|a| (1.0..=r).contains(&a.z.norm()))
                    .map(|a| a.mass / a.z.powu(k))
                    .sum();
                (r, s)
            })
            .collect()
    });
    Ok(AngularDensity {
        p,
        trace,
        fit,
        lindelof_trace,
    })
}

#[cfg(test)]
mod tests;
