//! Quantitative estimates for balayage evaluated on concrete charges.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{balayage_halfplane, balayage_system, seq_balayage_distribution, BalayageCharge};
use crate::charges::AtomicCharge;
use crate::error::{Error, Result};
use crate::harmonic_measure::poisson_kernel;
use crate::quad::{self, Tolerance};
use crate::ray_geometry::{classify_point, complementary_sectors, reduce_to_halfplane, Edge, Location, RaySystem};
use crate::trend::{self, dyadic_grid, Trend};

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub terms: Vec<(&'static str, f64)>,
}

impl BoundCheck {
    fn new(lhs: f64, terms: Vec<(&'static str, f64)>) -> Self {
        let rhs = terms.iter().map(|t| t.1).sum::<f64>();
        BoundCheck {
            lhs,
            rhs,
            holds: lhs <= rhs + SLACK,
            terms,
        }
    }
}

fn im_inv_abs(z: Complex64) -> f64 {
    z.im.abs() / z.norm_sqr()
}

/// Increment over `[t1, t2]` of the distribution function on ℝ of the
/// balayage of `|ν|` out of the upper half-plane, set against the
/// four-term estimate built from `|ν|` on the closed upper half-plane.
pub fn check_thcup_bound(nu: &AtomicCharge, t1: f64, t2: f64, a: f64) -> Result<BoundCheck> {
    if !(t1.is_finite() && t2.is_finite() && t1 < t2) {
        return Err(Error::InvalidInterval(t1, t2));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
    }
    if t1 * t2 < 0.0 {
        return Err(Error::HypothesisViolated(format!("t1 t2 = {} < 0", t1 * t2)));
    }
    let var = nu.variation();
    let mut lhs: f64 = var
        .atoms()
        .iter()
        .filter(|at| at.z.im == 0.0 && t1 <= at.z.re && at.z.re <= t2)
        .map(|at| at.mass)
        .sum();
    for s in balayage_halfplane(&var).swept() {
        lhs += s.source.mass * crate::harmonic_measure::hm_span(s.image, t1, t2);
    }
    let up = var.closed_upper();
    let x0 = 0.5 * (t1 + t2);
    let r = 0.5 * (t2 - t1);
    let ax = x0.abs();
    let origin = Complex64::new(0.0, 0.0);
    let near = up.disk_mass(Complex64::new(x0, 0.0), r);
    let annulus = 2.0 * r / (a * ax) * up.disk_mass(origin, 3.0 * ax / a);
    let tail: f64 = up
        .atoms()
        .iter()
        .filter(|at| at.z.norm() >= ax)
        .map(|at| at.mass * im_inv_abs(at.z))
        .sum();
    let tail = r / (1.0 - a).powi(2) * tail;
    let around = up.counting_about(Complex64::new(x0, 0.0), false);
    let integral = around.integrate(r, a * ax, |v| v, |t| -1.0 / t);
    let local = r * integral.max(0.0);
    Ok(BoundCheck::new(
        lhs,
        vec![("near", near), ("annulus", annulus), ("tail", tail), ("local", local)],
    ))
}

/// Target of the radial growth estimate with constant `2 r g²/(π (g − r)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthTarget {
    /// Balayage out of the upper half-plane.
    HalfPlane,
    /// Balayage of both half-planes onto ℝ.
    RealAxis,
}

/// Radial counting function of `|ν|^bal` at `r` against
/// `|ν|^rad(g) + 2 r g²/(π (g − r)²) Σ_{|z| ≥ g} |Im 1/z|`, `g = g(r)`.
pub fn check_ges_bound(nu: &AtomicCharge, target: GrowthTarget, g: f64, r: f64) -> Result<BoundCheck> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {r}")));
    }
    if !(g > r) || !g.is_finite() {
        return Err(Error::BadGauge { g, r });
    }
    let var = nu.variation();
    let (lhs, swept_from) = match target {
        GrowthTarget::HalfPlane => (balayage_halfplane(&var).radial(r), var.restrict(|z| z.im > 0.0)),
        GrowthTarget::RealAxis => (
            balayage_system(&var, &RaySystem::real_axis()).radial(r),
            var.restrict(|z| z.im != 0.0),
        ),
    };
    let inner = var.disk_mass(Complex64::new(0.0, 0.0), g);
    let sum: f64 = swept_from
        .atoms()
        .iter()
        .filter(|a| a.z.norm() >= g)
        .map(|a| a.mass * im_inv_abs(a.z))
        .sum();
    let tail = 2.0 * r * g * g / (PI * (g - r).powi(2)) * sum;
    Ok(BoundCheck::new(lhs, vec![("inner", inner), ("tail", tail)]))
}

/// `C⁺_S(r, g; ν) = Σ_sectors r^ρ Σ_{z in sector, |z| ≥ g} |m| (−Im 1/z')`.
pub fn sector_tail_sum(nu: &AtomicCharge, s: &RaySystem, r: f64, g: f64) -> f64 {
    complementary_sectors(s)
        .iter()
        .map(|sec| {
            let inner: f64 = nu
                .atoms()
                .iter()
                .filter(|a| sec.contains(a.z) && a.z.norm() >= g)
                .map(|a| {
                    let w = reduce_to_halfplane(sec, a.z).expect("interior point");
                    a.mass.abs() * w.im / w.norm_sqr()
                })
                .sum();
            r.powf(sec.exponent()) * inner
        })
        .sum()
}

/// Radial counting function of `|ν|^bal_S` at `r` against
/// `|ν|^rad(g) + 8 g²/(π (g − r)²) C⁺_S(r, g; ν)`.
pub fn check_system_growth_bound(nu: &AtomicCharge, s: &RaySystem, g: f64, r: f64) -> Result<BoundCheck> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {r}")));
    }
    if !(g > r) || !g.is_finite() {
        return Err(Error::BadGauge { g, r });
    }
    let var = nu.variation();
    let lhs = balayage_system(&var, s).radial(r);
    let inner = var.disk_mass(Complex64::new(0.0, 0.0), g);
    let tail = 8.0 * g * g / (PI * (g - r).powi(2)) * sector_tail_sum(&var, s, r, g);
    Ok(BoundCheck::new(lhs, vec![("inner", inner), ("tail", tail)]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeComparison {
    pub p: f64,
    pub balayage_sup: f64,
    pub charge_sup: f64,
    pub holds: bool,
}

/// Sampled comparison of `sup |ν|^bal,rad(r)/r^p` with `sup |ν|^rad(r)/r^p`
/// over the given radii (an estimate of the limsup inequality, `p ≥ 1`).
pub fn type_comparison(nu: &AtomicCharge, target: GrowthTarget, p: f64, radii: &[f64]) -> TypeComparison {
    let var = nu.variation();
    let bal = match target {
        GrowthTarget::HalfPlane => balayage_halfplane(&var),
        GrowthTarget::RealAxis => balayage_system(&var, &RaySystem::real_axis()),
    };
    let count = var.radial_counting(false);
    let sup = |f: &dyn Fn(f64) -> f64| radii.iter().map(|&r| f(r) / r.powf(p)).fold(0.0, f64::max);
    let balayage_sup = sup(&|r| bal.radial(r));
    let charge_sup = sup(&|r| count.eval(r));
    TypeComparison {
        p,
        balayage_sup,
        charge_sup,
        holds: balayage_sup <= charge_sup + SLACK,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzReport {
    /// Largest difference quotient of the distribution function on the grid.
    pub modulus: f64,
    /// Estimate of the modulus from the mass near the origin and the tail.
    pub tail_constant: f64,
    /// Ratio `a` with every `D̄(x, a|x|)`, `x ∈ [x1, x2]`, free of atoms.
    pub a: f64,
    pub grid_points: usize,
}

/// Lipschitz modulus on `[x1, x2]` of the distribution function of the
/// balayage of `ν` onto ℝ.
pub fn check_lipschitz(nu: &AtomicCharge, x1: f64, x2: f64) -> Result<LipschitzReport> {
    if !(x1.is_finite() && x2.is_finite() && x1 < x2) {
        return Err(Error::InvalidInterval(x1, x2));
    }
    if x1 * x2 <= 0.0 {
        return Err(Error::HypothesisViolated("interval must not contain 0".into()));
    }
    if let Some(a) = nu
        .atoms()
        .iter()
        .find(|a| a.z.im == 0.0 && x1 <= a.z.re && a.z.re <= x2)
    {
        return Err(Error::SupportTouchesInterval(a.z.re));
    }
    const N: usize = 512;
    let h = (x2 - x1) / N as f64;
    let xs: Vec<f64> = (0..=N).map(|k| x1 + h * k as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| seq_balayage_distribution(nu, x)).collect();
    let modulus = fs.windows(2).map(|w| (w[1] - w[0]).abs() / h).fold(0.0, f64::max);

    let var = nu.variation();
    let a = xs
        .iter()
        .map(|&x| {
            var.atoms()
                .iter()
                .map(|at| (at.z - x).norm() / x.abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min);
    let a = (0.99 * a).min(0.99);
    let origin = Complex64::new(0.0, 0.0);
    let tail_constant = xs
        .iter()
        .map(|&x| {
            let ax = x.abs();
            let tail: f64 = var
                .atoms()
                .iter()
                .filter(|at| at.z.norm() >= ax)
                .map(|at| at.mass * im_inv_abs(at.z))
                .sum();
            var.disk_mass(origin, 3.0 * ax / a) / (a * ax) + tail / (2.0 * (1.0 - a).powi(2))
        })
        .fold(0.0, f64::max);
    Ok(LipschitzReport {
        modulus,
        tail_constant,
        a,
        grid_points: N + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzFit {
    pub p: f64,
    pub fitted_b: f64,
    /// Per centre `x0`: the largest ratio `|ΔF| / (|t2 − t1| |x0|^{p−1})`.
    pub windows: Vec<(f64, f64)>,
    /// Log-log slope of the window maxima against `|x0|`.
    pub slope: f64,
    pub holds: bool,
}

/// Fits `b` in `|F(t2) − F(t1)| ≤ b |t2 − t1| |x0|^{p−1}` over centres
/// `r0 ≤ |x0| ≤ r_max` and lengths up to `|x0|/2`, and tests that the
/// ratios do not grow with `|x0|`.
pub fn lipschitz_form_fit(nu: &AtomicCharge, p: f64, r0: f64, r_max: f64) -> Result<LipschitzFit> {
    if !(r0 > 0.0 && r_max > r0) {
        return Err(Error::InvalidParameter(format!("window [{r0}, {r_max}]")));
    }
    let mut windows = Vec::new();
    for x in dyadic_grid(r0, r_max, 4) {
        let mut best: f64 = 0.0;
        for x0 in [x, -x] {
            for k in 0..4 {
                let hlen = x / 4.0 / f64::from(1u32 << k);
                let (t1, t2) = (x0 - hlen, x0 + hlen);
                let df = (seq_balayage_distribution(nu, t2) - seq_balayage_distribution(nu, t1)).abs();
                best = best.max(df / ((t2 - t1) * x.powf(p - 1.0)));
            }
        }
        windows.push((x, best));
    }
    let fitted_b = windows.iter().map(|w| w.1).fold(0.0, f64::max);
    let logs: Vec<(f64, f64)> = windows
        .iter()
        .filter(|w| w.1 > 0.0)
        .map(|&(x, v)| (x, v.ln()))
        .collect();
    let slope = trend::log_slope(&logs);
    Ok(LipschitzFit {
        p,
        fitted_b,
        windows,
        slope,
        holds: fitted_b.is_finite() && slope <= trend::SLOPE_THRESHOLD,
    })
}

/// Piecewise-linear profile along one ray, zero outside its knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayProfile {
    pub ray_index: usize,
    pub knots: Vec<(f64, f64)>,
}

impl RayProfile {
    fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        if t < k[0].0 || t > k[k.len() - 1].0 {
            return 0.0;
        }
        let i = k.partition_point(|p| p.0 <= t).clamp(1, k.len() - 1);
        let (u, fu) = k[i - 1];
        let (v, fv) = k[i];
        fu + (fv - fu) * (t - u) / (v - u)
    }
}

/// Continuous, compactly supported function on `S`, linear between knots
/// along each ray and vanishing at the origin.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub profiles: Vec<RayProfile>,
}

impl TestFunction {
    /// Hat of the given height on `[c − w, c + w]` of ray `j`.
    pub fn hat(ray_index: usize, center: f64, half_width: f64, height: f64) -> Result<Self> {
        let f = TestFunction {
            profiles: vec![RayProfile {
                ray_index,
                knots: vec![(center - half_width, 0.0), (center, height), (center + half_width, 0.0)],
            }],
        };
        f.check_knots()?;
        Ok(f)
    }

    fn check_knots(&self) -> Result<()> {
        for p in &self.profiles {
            let k = &p.knots;
            if k.len() < 2 {
                return Err(Error::InvalidParameter("profile needs at least two knots".into()));
            }
            if k.iter().any(|&(t, v)| !(t.is_finite() && v.is_finite() && t >= 0.0)) {
                return Err(Error::InvalidParameter("knots must be finite with t >= 0".into()));
            }
            if k.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(Error::InvalidParameter("knot radii must increase".into()));
            }
            if k[0].1 != 0.0 || k[k.len() - 1].1 != 0.0 {
                return Err(Error::InvalidParameter("profile must vanish at its end knots".into()));
            }
        }
        Ok(())
    }

    pub fn validate(&self, s: &RaySystem) -> Result<()> {
        self.check_knots()?;
        if let Some(p) = self.profiles.iter().find(|p| p.ray_index >= s.len()) {
            return Err(Error::InvalidParameter(format!("ray index {} out of range", p.ray_index)));
        }
        Ok(())
    }

    pub fn eval_on_ray(&self, j: usize, t: f64) -> f64 {
        self.profiles
            .iter()
            .filter(|p| p.ray_index == j)
            .map(|p| p.eval(t))
            .sum()
    }

    /// Value at a point of `S` (zero at the origin and off `S`).
    pub fn eval(&self, s: &RaySystem, z: Complex64) -> f64 {
        match classify_point(s, z) {
            Location::OnSystem { ray: Some(j) } => self.eval_on_ray(j, z.norm()),
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FubiniReport {
    pub lhs: f64,
    pub rhs: f64,
    pub equal: bool,
}

/// `∫ F dν^bal` (distribution functions plus quadrature) against
/// `∫ P F dν` (per-atom Poisson integrals in reduced coordinates).
pub fn check_fubini(nu: &AtomicCharge, s: &RaySystem, f: &TestFunction) -> Result<FubiniReport> {
    f.validate(s)?;
    let tol = Tolerance::abs(1e-12);
    let bal = balayage_system(nu, s);
    let on_s: f64 = bal.kept().atoms().iter().map(|a| a.mass * f.eval(s, a.z)).sum();

    let mut lhs = on_s;
    for sw in bal.swept() {
        for (edge, j) in [(Edge::Alpha, sw.alpha_ray), (Edge::Beta, sw.beta_ray)] {
            let m = |t: f64| sw.edge_mass(edge, 0.0, t);
            for p in f.profiles.iter().filter(|p| p.ray_index == j) {
                for w in p.knots.windows(2) {
                    let ((u, fu), (v, fv)) = (w[0], w[1]);
                    let slope = (fv - fu) / (v - u);
                    let area = quad::integrate(m, u, v, tol)?.value;
                    lhs += fv * m(v) - fu * m(u) - slope * area;
                }
            }
        }
    }

    let mut rhs = on_s;
    for sw in bal.swept() {
        let w = sw.image;
        let kernel = |x: f64| poisson_kernel(x, w).unwrap_or(0.0);
        for (edge, j) in [(Edge::Alpha, sw.alpha_ray), (Edge::Beta, sw.beta_ray)] {
            for p in f.profiles.iter().filter(|p| p.ray_index == j) {
                let images: Vec<f64> = p.knots.iter().map(|k| sw.sector.edge_image(edge, k.0)).collect();
                let lo = images.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = images.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mut breaks = images.clone();
                breaks.push(w.re);
                let g = |x: f64| {
                    let (e, t) = sw.sector.edge_preimage(x);
                    let t = if e == edge { t } else { 0.0 };
                    p.eval(t) * kernel(x)
                };
                rhs += sw.source.mass * quad::integrate_with_breaks(g, lo, hi, &breaks, tol)?.value;
            }
        }
    }
    Ok(FubiniReport {
        lhs,
        rhs,
        equal: (lhs - rhs).abs() <= 1e-8,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LindelofPoint {
    pub r: f64,
    #[serde(with = "crate::complex_json")]
    pub charge_sum: Complex64,
    #[serde(with = "crate::complex_json")]
    pub balayage_sum: Complex64,
    #[serde(with = "crate::complex_json")]
    pub difference: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LindelofReport {
    pub p: u32,
    pub trace: Vec<LindelofPoint>,
    /// `max_r |difference|` over the trace.
    pub fitted_constant: f64,
    pub slope: f64,
    pub bounded: bool,
}

/// Sums of `z^{−p}` over `r0 < |z| ≤ r` against `ν` and against `ν^bal_S`
/// (swept parts by quadrature of `t^{−p}` against the edge densities).
pub fn check_lindelof_preservation(
    nu: &AtomicCharge,
    s: &RaySystem,
    p: u32,
    r0: f64,
    radii: &[f64],
) -> Result<LindelofReport> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be a positive integer".into()));
    }
    if !(r0 > 0.0) || radii.iter().any(|&r| !(r > r0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radii must increase and exceed r0 > 0".into()));
    }
    let bal = balayage_system(nu, s);
    let tol = Tolerance::abs(1e-11);
    let pf = f64::from(p);
    let kept = bal.kept();
    let mut swept_acc = Complex64::new(0.0, 0.0);
    let mut lo = r0;
    let mut trace = Vec::with_capacity(radii.len());
    for &r in radii {
        for sw in bal.swept() {
            let breaks = [sw.source.z.norm()];
            for edge in [Edge::Alpha, Edge::Beta] {
                let dir = Complex64::from_polar(1.0, -pf * sw.sector.edge_angle(edge));
                let v = quad::integrate_with_breaks(
                    |t| sw.edge_density(edge, t) / t.powf(pf),
                    lo,
                    r,
                    &breaks,
                    tol,
                )?
                .value;
                swept_acc += dir * v;
            }
        }
        lo = r;
        let charge_sum = nu.lindelof_sum(p, r0, r);
        let balayage_sum = kept.lindelof_sum(p, r0, r) + swept_acc;
        trace.push(LindelofPoint {
            r,
            charge_sum,
            balayage_sum,
            difference: balayage_sum - charge_sum,
        });
    }
    let fitted_constant = trace.iter().map(|t| t.difference.norm()).fold(0.0, f64::max);
    let rep = trend::relative_trend(trace.iter().map(|t| (t.r, t.difference.norm())).collect());
    Ok(LindelofReport {
        p,
        trace,
        fitted_constant,
        slope: rep.slope,
        bounded: rep.verdict == Trend::Bounded,
    })
}

/// Linearity helper: balayage of `ν1 + ν2` against the sum of balayages,
/// compared on the radial counting function at `r`.
pub fn linearity_defect(nu1: &AtomicCharge, nu2: &AtomicCharge, s: &RaySystem, r: f64) -> Result<f64> {
    let sum = balayage_system(&nu1.add(nu2), s);
    let parts: BalayageCharge = balayage_system(nu1, s).combine(&balayage_system(nu2, s))?;
    Ok((sum.radial(r) - parts.radial(r)).abs())
}
