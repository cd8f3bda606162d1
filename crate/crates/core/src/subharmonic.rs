//! Weierstrass–Hadamard kernels, canonical potentials of atomic charges,
//! circle means, the class-A functionals and the Carleman identity in the
//! upper half-plane, and balayage of subharmonic functions onto ray systems.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::balayage::BalayageCharge;
use crate::charges::AtomicCharge;
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::harmonic_measure::hm_span;
use crate::quad::{self, Tolerance};
use crate::ray_geometry::{classify_point, reduce_to_halfplane, Location, RaySystem, Sector};
use crate::trend::{self, TrendReport};

/// Anything that can be evaluated pointwise with values in `[−∞, +∞)`.
/// Implementations must be safe to call concurrently.
pub trait Evaluable {
    fn value(&self, z: Complex64) -> ExtReal;
}

impl<F: Fn(Complex64) -> f64> Evaluable for F {
    fn value(&self, z: Complex64) -> ExtReal {
        match ExtReal::from_f64(self(z)) {
            Some(e) => e,
            None => ExtReal::Finite(f64::NAN),
        }
    }
}

/// `K_q(ζ, z)`: `log|ζ − z|` for `q = −1`, otherwise
/// `log|1 − z/ζ| + Σ_{j=1}^q Re (z/ζ)^j / j`.
pub fn kernel_kq(zeta: Complex64, z: Complex64, q: i32) -> Result<f64> {
    if q < -1 {
        return Err(Error::InvalidParameter(format!("genus {q} < -1")));
    }
    if zeta == z {
        return Err(Error::CoincidentPoints(z));
    }
    if q == -1 {
        return Ok((zeta - z).norm().ln());
    }
    if zeta == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroCenter);
    }
    let w = z / zeta;
    let mut s = (Complex64::new(1.0, 0.0) - w).norm().ln();
    let mut wj = Complex64::new(1.0, 0.0);
    for j in 1..=q {
        wj *= w;
        s += wj.re / f64::from(j);
    }
    Ok(s)
}

/// `d/dt K_q(t, z) = Re z^{q+1} / (t^{q+1} (t − z))` for `t > 0`.
pub fn kernel_kq_radial_derivative(z: Complex64, t: f64, q: i32) -> Result<f64> {
    if q < 0 {
        return Err(Error::InvalidParameter(format!("genus {q} < 0")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("radius {t}")));
    }
    if z == Complex64::new(t, 0.0) {
        return Err(Error::Singularity(t));
    }
    let e = q + 1;
    Ok(((z / t).powi(e) / (t - z)).re)
}

/// Right-continuous genus `q(t)`: `q_n` on `[r_n, r_{n+1})`, with `r_0 = 0`,
/// `q_0 = −1` and `r_1 ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleRepr", into = "ScheduleRepr")]
pub struct GenusSchedule {
    radii: Vec<f64>,
    genera: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleRepr {
    radii: Vec<f64>,
    genera: Vec<i32>,
}

impl TryFrom<ScheduleRepr> for GenusSchedule {
    type Error = Error;
    fn try_from(r: ScheduleRepr) -> Result<Self> {
        GenusSchedule::new(r.radii, r.genera)
    }
}

impl From<GenusSchedule> for ScheduleRepr {
    fn from(g: GenusSchedule) -> Self {
        ScheduleRepr {
            radii: g.radii,
            genera: g.genera,
        }
    }
}

impl GenusSchedule {
    pub fn new(radii: Vec<f64>, genera: Vec<i32>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidSchedule(m.into()));
        if radii.is_empty() || radii.len() != genera.len() {
            return bad("radii and genera must be nonempty and of equal length");
        }
        if radii[0] != 0.0 || genera[0] != -1 {
            return bad("schedule must start with radius 0 and genus -1");
        }
        if radii.len() > 1 && !(radii[1] >= 1.0) {
            return bad("first jump radius must be at least 1");
        }
        if radii.iter().any(|r| !r.is_finite()) || radii.windows(2).any(|w| w[1] <= w[0]) {
            return bad("radii must be finite and strictly increasing");
        }
        if genera.windows(2).any(|w| w[1] < w[0]) {
            return bad("genera must be nondecreasing");
        }
        Ok(GenusSchedule { radii, genera })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn genera(&self) -> &[i32] {
        &self.genera
    }

    pub fn genus_at(&self, t: f64) -> i32 {
        let n = self.radii.partition_point(|&r| r <= t).max(1);
        self.genera[n - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Genus {
    Fixed(i32),
    Schedule(GenusSchedule),
}

impl Genus {
    pub fn at(&self, t: f64) -> i32 {
        match self {
            Genus::Fixed(q) => *q,
            Genus::Schedule(s) => s.genus_at(t),
        }
    }
}

/// `Re Σ c_k z^k`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HarmonicPolynomial {
    #[serde(with = "crate::complex_json::vec")]
    pub coeffs: Vec<Complex64>,
}

impl HarmonicPolynomial {
    pub fn eval(&self, z: Complex64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
            .re
    }
}

/// `v = U^ν_{K_{q(|·|)}} + H` for a finite atomic Riesz charge `ν`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalPotential {
    charge: AtomicCharge,
    genus: Genus,
    harmonic: HarmonicPolynomial,
}

impl CanonicalPotential {
    pub fn new(charge: AtomicCharge, genus: Genus) -> Result<Self> {
        if let Genus::Fixed(q) = genus {
            if q < -1 {
                return Err(Error::InvalidParameter(format!("genus {q} < -1")));
            }
        }
        if charge
            .atoms()
            .iter()
            .any(|a| a.z == Complex64::new(0.0, 0.0) && genus.at(0.0) >= 0)
        {
            return Err(Error::ZeroCenter);
        }
        Ok(CanonicalPotential {
            charge,
            genus,
            harmonic: HarmonicPolynomial::default(),
        })
    }

    pub fn with_harmonic(mut self, h: HarmonicPolynomial) -> Self {
        self.harmonic = h;
        self
    }

    pub fn charge(&self) -> &AtomicCharge {
        &self.charge
    }

    pub fn genus(&self) -> &Genus {
        &self.genus
    }

    /// `Σ |m| (x0/|ζ|)^{q(|ζ|)+1}`, finite for any finite charge; used to
    /// compare schedules on truncations.
    pub fn convergence_sum(&self, x0: f64) -> f64 {
        self.charge
            .atoms()
            .iter()
            .filter(|a| a.z.norm() > 0.0)
            .map(|a| {
                let t = a.z.norm();
                a.mass.abs() * (x0 / t).powi(self.genus.at(t) + 1)
            })
            .sum()
    }
}

impl Evaluable for CanonicalPotential {
    fn value(&self, z: Complex64) -> ExtReal {
        potential_eval(self, z)
    }
}

/// Finite sum of kernel values; `−∞` at points carrying positive net mass.
pub fn potential_eval(pot: &CanonicalPotential, z: Complex64) -> ExtReal {
    let mut sum = pot.harmonic.eval(z);
    let mut at_point = 0.0;
    for a in pot.charge.atoms() {
        if a.z == z {
            at_point += a.mass;
            continue;
        }
        let q = pot.genus.at(a.z.norm());
        sum += a.mass * kernel_kq(a.z, z, q).expect("validated kernel arguments");
    }
    if at_point > 0.0 {
        ExtReal::NegInf
    } else if at_point < 0.0 {
        ExtReal::PosInf
    } else {
        ExtReal::Finite(sum)
    }
}

fn finite(e: ExtReal) -> f64 {
    e.to_f64()
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// `C(r; v) = (1/2π) ∫ v(r e^{iθ}) dθ` by trapezoidal sums with node
/// doubling until successive sums agree to `1e−10`. Nodes are offset from
/// the axes and shifted again if one lands on a pole.
pub fn circle_mean<V: Evaluable + ?Sized>(v: &V, r: f64, n_nodes: usize) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {r}")));
    }
    let trapezoid = |n: usize| -> Option<f64> {
        let mut shift = GOLDEN;
        'retry: for _ in 0..4 {
            let mut s = 0.0;
            for k in 0..n {
                let th = 2.0 * PI * (k as f64 + shift) / n as f64;
                match v.value(Complex64::from_polar(r, th)) {
                    ExtReal::Finite(x) if x.is_finite() => s += x,
                    _ => {
                        shift = (shift + GOLDEN) % 1.0;
                        continue 'retry;
                    }
                }
            }
            return Some(s / n as f64);
        }
        None
    };
    let mut n = n_nodes.max(8);
    let mut prev = trapezoid(n).ok_or(Error::QuadratureFailure { estimate: f64::NAN, tol: 1e-10 })?;
    while n < 1 << 20 {
        n *= 2;
        let cur = trapezoid(n).ok_or(Error::QuadratureFailure { estimate: f64::NAN, tol: 1e-10 })?;
        let diff = (cur - prev).abs();
        if diff <= 1e-10 * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure {
        estimate: prev,
        tol: 1e-10,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanInequality {
    pub mean_abs: f64,
    pub bound: f64,
    pub bound_at_origin: Option<f64>,
    pub holds: bool,
}

/// `C(r; |v|) ≤ 2 C(r; v⁺) − C(r0; v) ≤ 2 C(r; v⁺) − v(0)`.
pub fn mean_inequality<V: Evaluable + ?Sized>(v: &V, r0: f64, r: f64) -> Result<MeanInequality> {
    if !(0.0 < r0 && r0 < r) {
        return Err(Error::InvalidParameter(format!("radii {r0}, {r}")));
    }
    let abs = |z: Complex64| finite(v.value(z)).abs();
    let pos = |z: Complex64| v.value(z).positive_part();
    let val = |z: Complex64| finite(v.value(z));
    let mean_abs = circle_mean(&abs, r, 64)?;
    let pos_mean = circle_mean(&pos, r, 64)?;
    let bound = 2.0 * pos_mean - circle_mean(&val, r0, 64)?;
    let origin = v.value(Complex64::new(0.0, 0.0));
    let bound_at_origin = origin.finite().map(|v0| 2.0 * pos_mean - v0);
    let tol = 1e-8 * mean_abs.max(1.0);
    let holds = mean_abs <= bound + tol && bound_at_origin.is_none_or(|b0| bound <= b0 + tol);
    Ok(MeanInequality {
        mean_abs,
        bound,
        bound_at_origin,
        holds,
    })
}

fn angle_check(alpha: f64, beta: f64, r0: f64, r: f64) -> Result<f64> {
    let gamma = beta - alpha;
    if !(gamma > 0.0 && gamma <= 2.0 * PI + 1e-12) {
        return Err(Error::InvalidSector(alpha, beta));
    }
    if !(0.0 < r0 && r0 < r && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radii {r0}, {r}")));
    }
    Ok(gamma)
}

const FUNCTIONAL_TOL: Tolerance = Tolerance {
    abs: 1e-11,
    rel: 1e-11,
    max_segments: 20_000,
};

/// `∫_a^b f(t) dt` after `t = e^u`, which evens out integrands over
/// several decades.
fn integrate_log<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    Ok(quad::integrate(|u| {
        let t = u.exp();
        f(t) * t
    }, a.ln(), b.ln(), tol)?
    .value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassA {
    pub a: f64,
    pub b: f64,
    pub j: f64,
    /// `A` through `J` and the complementary integral.
    pub a_from_j: f64,
    /// `A` through the weighted integral of `J(r0, t)`.
    pub a_from_double: f64,
    pub identities_hold: bool,
}

/// The functionals `A_{α,β}`, `B_{α,β}`, `J_{α,β}` and the two alternative
/// forms of `A`, each by its own quadrature.
pub fn class_a_functionals<V: Evaluable + ?Sized>(v: &V, alpha: f64, beta: f64, r0: f64, r: f64) -> Result<ClassA> {
    let gamma = angle_check(alpha, beta, r0, r)?;
    let k = PI / gamma;
    let (ea, eb) = (Complex64::from_polar(1.0, alpha), Complex64::from_polar(1.0, beta));
    let edges = |t: f64| finite(v.value(ea * t)) + finite(v.value(eb * t));
    let tol = FUNCTIONAL_TOL;

    let a = integrate_log(|t| (t.powf(-k) - t.powf(k) / r.powf(2.0 * k)) * edges(t) / t, r0, r, tol)? / (2.0 * gamma);
    let jf = |hi: f64| integrate_log(|t| edges(t) / t.powf(k + 1.0), r0, hi, tol);
    let j = jf(r)?;
    let comp = integrate_log(|t| edges(t) * t.powf(k - 1.0), r0, r, tol)?;
    let a_from_j = (j - comp / r.powf(2.0 * k)) / (2.0 * gamma);

    let outer_tol = Tolerance {
        abs: 1e-10,
        rel: 1e-10,
        max_segments: 2_000,
    };
    let inner_err = std::cell::RefCell::new(None);
    let double = integrate_log(
        |t| match jf(t) {
            Ok(x) => x * t.powf(2.0 * k - 1.0),
            Err(e) => {
                inner_err.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        r0,
        r,
        outer_tol,
    );
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    let a_from_double = PI / (gamma * gamma * r.powf(2.0 * k)) * double?;

    let b = quad::integrate(
        |th| finite(v.value(Complex64::from_polar(r, th))) * (k * (th - alpha)).sin(),
        alpha,
        beta,
        tol,
    )?
    .value
        / (gamma * r.powf(k));

    let scale = a.abs().max(1.0);
    let identities_hold = (a - a_from_j).abs() <= 1e-6 * scale && (a - a_from_double).abs() <= 1e-6 * scale;
    Ok(ClassA {
        a,
        b,
        j,
        a_from_j,
        a_from_double,
        identities_hold,
    })
}

/// `A + B` over the given radii with a growth verdict.
pub fn class_a_sweep<V: Evaluable + ?Sized>(
    v: &V,
    alpha: f64,
    beta: f64,
    r0: f64,
    radii: &[f64],
) -> Result<TrendReport> {
    let gamma = angle_check(alpha, beta, r0, radii.iter().copied().fold(f64::INFINITY, f64::min))?;
    let k = PI / gamma;
    let (ea, eb) = (Complex64::from_polar(1.0, alpha), Complex64::from_polar(1.0, beta));
    let edges = |t: f64| finite(v.value(ea * t)) + finite(v.value(eb * t));
    let mut trace = Vec::with_capacity(radii.len());
    for &r in radii {
        let a = integrate_log(|t| (t.powf(-k) - t.powf(k) / r.powf(2.0 * k)) * edges(t) / t, r0, r, FUNCTIONAL_TOL)?
            / (2.0 * gamma);
        let b = quad::integrate(
            |th| finite(v.value(Complex64::from_polar(r, th))) * (k * (th - alpha)).sin(),
            alpha,
            beta,
            FUNCTIONAL_TOL,
        )?
        .value
            / (gamma * r.powf(k));
        trace.push((r, a + b));
    }
    Ok(trend::trend(trace))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlemanReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub terms: Vec<(&'static str, f64)>,
}

/// Carleman identity in the upper half-plane for `v = Σ m log|z − ζ| + H`:
/// atom sums on one side, boundary functionals on the other.
pub fn carleman_check(nu: &AtomicCharge, harmonic: &HarmonicPolynomial, r0: f64, r: f64) -> Result<CarlemanReport> {
    angle_check(0.0, PI, r0, r)?;
    for a in nu.atoms() {
        let m = a.z.norm();
        if a.z.im >= 0.0 && (m == r0 || m == r) {
            return Err(Error::AtomOnCircle(a.z));
        }
    }
    let pot = CanonicalPotential::new(nu.clone(), Genus::Fixed(-1))?.with_harmonic(harmonic.clone());
    let v = |z: Complex64| finite(potential_eval(&pot, z));

    let mut outer = 0.0;
    let mut inner = 0.0;
    for at in nu.atoms().iter().filter(|a| a.z.im > 0.0) {
        let m = at.z.norm();
        if r0 < m && m <= r {
            outer += at.mass * (at.z.im / at.z.norm_sqr() - at.z.im / (r * r));
        } else if m <= r0 {
            inner += at.mass * at.z.im;
        }
    }
    let w = 1.0 / (r0 * r0) - 1.0 / (r * r);
    let lhs = outer + w * inner;

    let tol = FUNCTIONAL_TOL;
    let edges = |t: f64| v(Complex64::new(t, 0.0)) + v(Complex64::new(-t, 0.0));
    let mut breaks: Vec<f64> = nu
        .atoms()
        .iter()
        .filter(|a| a.z.im == 0.0)
        .map(|a| a.z.re.abs())
        .filter(|&t| t > 0.0)
        .collect();
    breaks.sort_by(f64::total_cmp);
    let a = quad::integrate_with_breaks(|t| (1.0 / t - t / (r * r)) * edges(t) / t, r0, r, &breaks, tol)?.value
        / (2.0 * PI);
    let b = quad::integrate(|th| v(Complex64::from_polar(r, th)) * th.sin(), 0.0, PI, tol)?.value / (PI * r);
    let near = w * quad::integrate_with_breaks(edges, 0.0, r0, &breaks, tol)?.value / (2.0 * PI);
    let small = quad::integrate(|th| v(Complex64::from_polar(r0, th)) * th.sin(), 0.0, PI, tol)?.value / (PI * r0);
    let rhs = a + b + near - small;
    Ok(CarlemanReport {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        terms: vec![("A", a), ("B", b), ("near-axis", near), ("inner-arc", -small)],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalayageValue {
    pub value: f64,
    /// Estimated contribution of the edges beyond the truncation radius.
    pub tail: f64,
    pub on_system: bool,
}

/// Cauchy substitution `s = Re w + Im w · tan φ` turning the Poisson
/// measure of `w` into `dφ/π`.
fn cauchy_angle(w: Complex64, s: f64) -> f64 {
    ((s - w.re) / w.im).atan()
}

fn reduced_poisson_integral<F: Fn(f64) -> f64>(
    w: Complex64,
    lo: f64,
    hi: f64,
    singular: &[f64],
    g: F,
    tol: Tolerance,
) -> Result<f64> {
    let (pa, pb) = (cauchy_angle(w, lo), cauchy_angle(w, hi));
    let breaks: Vec<f64> = singular.iter().map(|&s| cauchy_angle(w, s)).collect();
    Ok(quad::integrate_with_breaks(|phi| g(w.re + w.im * phi.tan()), pa, pb, &breaks, tol)?.value / PI)
}

/// Value at `z` of the balayage of `v` onto `S`: `v(z)` on `S`, otherwise
/// the Poisson integral of `v` over the edges of the sector holding `z`,
/// truncated at `|ζ| = r_max`.
pub fn subharmonic_balayage_eval<V: Evaluable + ?Sized>(
    v: &V,
    s: &RaySystem,
    z: Complex64,
    r_max: f64,
    singular_radii: &[f64],
    tol: f64,
) -> Result<BalayageValue> {
    if !(r_max > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation radius {r_max}")));
    }
    let sector = match classify_point(s, z) {
        Location::OnSystem { .. } => {
            return Ok(BalayageValue {
                value: finite(v.value(z)),
                tail: 0.0,
                on_system: true,
            })
        }
        Location::InSector { sector, .. } => sector,
    };
    let w = reduce_to_halfplane(&sector, z)?;
    let rho = sector.exponent();
    let edge_value = |x: f64| {
        let (e, t) = sector.edge_preimage(x);
        finite(v.value(Complex64::from_polar(t, sector.edge_angle(e))))
    };
    let tail = edge_tail(&sector, w, r_max, &edge_value);
    if !(tail <= tol) {
        return Err(Error::TailTooLarge { bound: tail, tol });
    }
    let cut = r_max.powf(rho);
    let mut singular: Vec<f64> = singular_radii
        .iter()
        .filter(|&&t| t > 0.0 && t < r_max)
        .flat_map(|&t| [t.powf(rho), -t.powf(rho)])
        .collect();
    singular.push(0.0);
    let qtol = Tolerance {
        abs: (0.1 * tol).min(1e-13),
        rel: 1e-13,
        max_segments: 20_000,
    };
    let value = reduced_poisson_integral(w, -cut, cut, &singular, edge_value, qtol)?;
    Ok(BalayageValue {
        value,
        tail,
        on_system: false,
    })
}

/// Tail estimate `Σ_k max|v| · ω(w, annulus_k)` over dyadic annuli beyond
/// `r_max`, closed by a crude remainder.
fn edge_tail<F: Fn(f64) -> f64>(sector: &Sector, w: Complex64, r_max: f64, edge_value: &F) -> f64 {
    let rho = sector.exponent();
    let mut total = 0.0;
    let mut t = r_max;
    for _ in 0..60 {
        let (a, b) = (t.powf(rho), (2.0 * t).powf(rho));
        let sup = [a, b, -a, -b].iter().map(|&x| edge_value(x).abs()).fold(0.0, f64::max);
        let mass = hm_span(w, a, b) + hm_span(w, -b, -a);
        total += sup * mass;
        t *= 2.0;
    }
    let far = t.powf(rho);
    let sup = [far, -far].iter().map(|&x| edge_value(x).abs()).fold(0.0, f64::max);
    total + 2.0 * sup * (hm_span(w, far, f64::INFINITY) + hm_span(w, f64::NEG_INFINITY, -far))
}

/// `U^{ν^bal}(z) = ∫ log|z − ζ| dν^bal(ζ)`: kept atoms exactly, swept
/// atoms by their Poisson integrals in reduced coordinates.
pub fn balayage_log_potential(bal: &BalayageCharge, z: Complex64) -> Result<ExtReal> {
    let mut sum = ExtReal::Finite(0.0);
    for a in bal.kept().atoms() {
        let d = (z - a.z).norm();
        let term = if d == 0.0 {
            ExtReal::NegInf * a.mass
        } else {
            ExtReal::Finite(a.mass * d.ln())
        };
        sum = sum
            .checked_add(term)
            .ok_or_else(|| Error::InvalidParameter("potential undefined at a point of mixed sign".into()))?;
    }
    let tol = Tolerance {
        abs: 1e-12,
        rel: 1e-12,
        max_segments: 20_000,
    };
    for sw in bal.swept() {
        let sec = sw.sector;
        let mut singular = vec![0.0];
        if let Some(x) = edge_image_of(&sec, z) {
            singular.push(x);
        }
        let g = |x: f64| {
            let (e, t) = sec.edge_preimage(x);
            (z - Complex64::from_polar(t, sec.edge_angle(e))).norm().ln()
        };
        let v = reduced_poisson_integral(sw.image, f64::NEG_INFINITY, f64::INFINITY, &singular, g, tol)?;
        sum = sum + sw.source.mass * v;
    }
    Ok(sum)
}

/// Reduced coordinate of `z` if it lies on an edge of the sector.
fn edge_image_of(sec: &Sector, z: Complex64) -> Option<f64> {
    let t = z.norm();
    if t == 0.0 {
        return Some(0.0);
    }
    [crate::ray_geometry::Edge::Alpha, crate::ray_geometry::Edge::Beta]
        .into_iter()
        .find(|&e| (Complex64::from_polar(t, sec.edge_angle(e)) - z).norm() <= 1e-12 * t)
        .map(|e| sec.edge_image(e, t))
}
