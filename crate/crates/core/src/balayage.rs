//! Classical balayage of atomic charges onto ℝ (from the upper half-plane)
//! and onto closed ray systems.
//!
//! Swept atoms are never discretized: each keeps its source and host sector,
//! and every distribution function is a finite sum of arctangents.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charges::{Atom, AtomicCharge};
use crate::error::{Error, Result};
use crate::harmonic_measure::{hm_span, poisson_kernel};
use crate::quad::{self, Tolerance};
use crate::ray_geometry::{
    classify_point, complementary_sectors, reduce_to_halfplane, sector_edges, Edge, Location, RaySystem, Sector,
    ANGLE_TOL,
};

mod checks;
pub use checks::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    /// Sweeping out of the upper half-plane onto the closed lower half-plane.
    HalfPlane,
    /// Sweeping out of every complementary sector onto the ray system.
    Rays,
}

/// An atom swept out of its host sector onto the sector's two edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweptAtom {
    pub source: Atom,
    pub sector: Sector,
    /// Image of the source under the power map of the sector.
    pub image: Complex64,
    pub alpha_ray: usize,
    pub beta_ray: usize,
}

impl SweptAtom {
    fn new(source: Atom, sector: Sector, alpha_ray: usize, beta_ray: usize) -> Result<Self> {
        let image = reduce_to_halfplane(&sector, source.z)?;
        if !(image.im > 0.0) {
            return Err(Error::PointNotInSector(source.z));
        }
        Ok(SweptAtom {
            source,
            sector,
            image,
            alpha_ray,
            beta_ray,
        })
    }

    /// Mass put on `{t e^{i·edge} : a < t ≤ b}`; `b` may be infinite.
    pub fn edge_mass(&self, edge: Edge, a: f64, b: f64) -> f64 {
        let (p, q) = (self.sector.edge_image(edge, a), self.sector.edge_image(edge, b));
        self.source.mass * hm_span(self.image, p.min(q), p.max(q))
    }

    /// Mass put on ray `j` within radii `(a, b]`.
    pub fn ray_mass(&self, j: usize, a: f64, b: f64) -> f64 {
        let mut m = 0.0;
        if self.alpha_ray == j {
            m += self.edge_mass(Edge::Alpha, a, b);
        }
        if self.beta_ray == j {
            m += self.edge_mass(Edge::Beta, a, b);
        }
        m
    }

    /// Mass put inside the closed disk `D̄(r)`.
    pub fn disk_mass(&self, r: f64) -> f64 {
        let s = r.powf(self.sector.exponent());
        self.source.mass * hm_span(self.image, -s, s)
    }

    pub fn total_mass(&self) -> f64 {
        self.source.mass
            * (hm_span(self.image, 0.0, f64::INFINITY) + hm_span(self.image, f64::NEG_INFINITY, 0.0))
    }

    /// Density with respect to arc length on `edge` at radius `t > 0`.
    pub fn edge_density(&self, edge: Edge, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        let rho = self.sector.exponent();
        let s = self.sector.edge_image(edge, t);
        let jac = rho * t.powf(rho - 1.0);
        self.source.mass * poisson_kernel(s, self.image).unwrap_or(0.0) * jac
    }

    pub fn ray_density(&self, j: usize, t: f64) -> f64 {
        let mut d = 0.0;
        if self.alpha_ray == j {
            d += self.edge_density(Edge::Alpha, t);
        }
        if self.beta_ray == j {
            d += self.edge_density(Edge::Beta, t);
        }
        d
    }

    fn with_mass(&self, mass: f64) -> Self {
        SweptAtom {
            source: Atom { z: self.source.z, mass },
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BalayageRepr", into = "BalayageRepr")]
pub struct BalayageCharge {
    kind: TargetKind,
    rays: RaySystem,
    kept: AtomicCharge,
    swept: Vec<SweptAtom>,
}

/// Sweeps the upper half-plane part of `nu` onto ℝ; the rest stays put.
pub fn balayage_halfplane(nu: &AtomicCharge) -> BalayageCharge {
    let mut kept = Vec::new();
    let mut swept = Vec::new();
    let up = Sector::upper_half_plane();
    for a in nu.atoms() {
        match SweptAtom::new(*a, up, 0, 1) {
            Ok(sw) if a.z.im > 0.0 => swept.push(sw),
            // lower half-plane, or within angular rounding of ℝ
            _ => kept.push(*a),
        }
    }
    BalayageCharge {
        kind: TargetKind::HalfPlane,
        rays: RaySystem::real_axis(),
        kept: AtomicCharge::new(kept),
        swept,
    }
}

/// Sweeps every atom off `S` onto the edges of its complementary sector.
pub fn balayage_system(nu: &AtomicCharge, s: &RaySystem) -> BalayageCharge {
    let mut kept = Vec::new();
    let mut swept = Vec::new();
    for a in nu.atoms() {
        match classify_point(s, a.z) {
            Location::OnSystem { .. } => kept.push(*a),
            Location::InSector { index, sector } => {
                let (ja, jb) = sector_edges(s, index);
                match SweptAtom::new(*a, sector, ja, jb) {
                    Ok(sw) => swept.push(sw),
                    // within rounding of an edge: treat as lying on it
                    Err(_) => kept.push(*a),
                }
            }
        }
    }
    BalayageCharge {
        kind: TargetKind::Rays,
        rays: s.clone(),
        kept: AtomicCharge::new(kept),
        swept,
    }
}

/// Distribution function on ℝ of the balayage of a point sequence onto ℝ:
/// `Σ ω(z_k, [0, x])` for `x ≥ 0` and `−Σ ω(z_k, [x, 0))` for `x < 0`,
/// with `ω` the harmonic measure of the half-plane containing `z_k`.
pub fn seq_balayage_distribution(nu: &AtomicCharge, x: f64) -> f64 {
    let mut total = 0.0;
    for a in nu.atoms() {
        let z = a.z;
        let v = if z.im == 0.0 {
            let inside = if x >= 0.0 {
                0.0 <= z.re && z.re <= x
            } else {
                x <= z.re && z.re < 0.0
            };
            if inside {
                1.0
            } else {
                0.0
            }
        } else {
            let w = if z.im > 0.0 { z } else { z.conj() };
            if x >= 0.0 {
                hm_span(w, 0.0, x)
            } else {
                hm_span(w, x, 0.0)
            }
        };
        total += a.mass * v;
    }
    if x >= 0.0 {
        total
    } else {
        -total
    }
}

impl BalayageCharge {
    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn rays(&self) -> &RaySystem {
        &self.rays
    }

    pub fn kept(&self) -> &AtomicCharge {
        &self.kept
    }

    pub fn swept(&self) -> &[SweptAtom] {
        &self.swept
    }

    fn kept_ray(&self, z: Complex64) -> Option<usize> {
        if z == Complex64::new(0.0, 0.0) {
            return None;
        }
        self.rays.ray_index(z.arg())
    }

    pub fn origin_mass(&self) -> f64 {
        self.kept
            .atoms()
            .iter()
            .filter(|a| a.z == Complex64::new(0.0, 0.0))
            .map(|a| a.mass)
            .sum()
    }

    /// Mass on ray `j` within radii `(a, b]`; the origin is excluded.
    pub fn ray_mass(&self, j: usize, a: f64, b: f64) -> f64 {
        let kept: f64 = self
            .kept
            .atoms()
            .iter()
            .filter(|at| self.kept_ray(at.z) == Some(j) && a < at.z.norm() && at.z.norm() <= b)
            .map(|at| at.mass)
            .sum();
        kept + self.swept.iter().map(|s| s.ray_mass(j, a, b)).sum::<f64>()
    }

    /// `n_j(t)`: mass on ray `j` within `(0, t]`.
    pub fn ray_distribution(&self, j: usize, t: f64) -> f64 {
        self.ray_mass(j, 0.0, t)
    }

    /// `ν^bal(D̄(r))`.
    pub fn radial(&self, r: f64) -> f64 {
        self.kept.disk_mass(Complex64::new(0.0, 0.0), r) + self.swept.iter().map(|s| s.disk_mass(r)).sum::<f64>()
    }

    pub fn total_mass(&self) -> f64 {
        self.kept.total_mass() + self.swept.iter().map(|s| s.total_mass()).sum::<f64>()
    }

    /// Density on ray `j` at radius `t > 0` (swept part only).
    pub fn ray_density(&self, j: usize, t: f64) -> f64 {
        self.swept.iter().map(|s| s.ray_density(j, t)).sum()
    }

    /// Distribution function on ℝ: `ν([0, x])` for `x ≥ 0`, `−ν([x, 0))` for `x < 0`.
    pub fn distribution_on_real(&self, x: f64) -> Result<f64> {
        if !self.rays.is_real_axis() {
            return Err(Error::InvalidParameter("target is not the real axis".into()));
        }
        if let Some(a) = self.kept.atoms().iter().find(|a| a.z.im != 0.0) {
            return Err(Error::SupportOffAxis(a.z));
        }
        Ok(if x >= 0.0 {
            self.origin_mass() + self.ray_mass(0, 0.0, x)
        } else {
            -self.ray_mass(1, 0.0, -x)
        })
    }

    /// Balayage of the variation `|ν|` of the source charge.
    pub fn of_variation(&self) -> Self {
        self.map_masses(f64::abs)
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map_masses(|m| c * m)
    }

    fn map_masses<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        BalayageCharge {
            kind: self.kind,
            rays: self.rays.clone(),
            kept: AtomicCharge::new(
                self.kept
                    .atoms()
                    .iter()
                    .filter(|a| f(a.mass) != 0.0)
                    .map(|a| Atom { z: a.z, mass: f(a.mass) })
                    .collect(),
            ),
            swept: self
                .swept
                .iter()
                .filter(|s| f(s.source.mass) != 0.0)
                .map(|s| s.with_mass(f(s.source.mass)))
                .collect(),
        }
    }

    /// Sum of two balayages onto the same target.
    pub fn combine(&self, other: &BalayageCharge) -> Result<Self> {
        if self.kind != other.kind || self.rays != other.rays {
            return Err(Error::InvalidParameter("balayage targets differ".into()));
        }
        let mut swept = self.swept.clone();
        swept.extend_from_slice(&other.swept);
        Ok(BalayageCharge {
            kind: self.kind,
            rays: self.rays.clone(),
            kept: self.kept.add(&other.kept),
            swept,
        })
    }

    /// Positive and negative variation of the balayage on ray `j` within
    /// `(a, b]`, by quadrature of the positive and negative parts of the density.
    pub fn ray_variation_parts(&self, j: usize, a: f64, b: f64, tol: Tolerance) -> Result<(f64, f64)> {
        let mut pos = 0.0;
        let mut neg = 0.0;
        for at in self.kept.atoms() {
            let t = at.z.norm();
            if self.kept_ray(at.z) == Some(j) && a < t && t <= b {
                if at.mass > 0.0 {
                    pos += at.mass;
                } else {
                    neg -= at.mass;
                }
            }
        }
        let breaks: Vec<f64> = self.swept.iter().map(|s| s.source.z.norm()).collect();
        let p = quad::integrate_with_breaks(|t| self.ray_density(j, t).max(0.0), a, b, &breaks, tol)?;
        let n = quad::integrate_with_breaks(|t| (-self.ray_density(j, t)).max(0.0), a, b, &breaks, tol)?;
        Ok((pos + p.value, neg + n.value))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweptRepr {
    source: Atom,
    sector: Sector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BalayageRepr {
    /// Absent for balayage out of the upper half-plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rays: Option<Vec<f64>>,
    kept: Vec<Atom>,
    swept: Vec<SweptRepr>,
}

impl From<BalayageCharge> for BalayageRepr {
    fn from(b: BalayageCharge) -> Self {
        BalayageRepr {
            rays: match b.kind {
                TargetKind::HalfPlane => None,
                TargetKind::Rays => Some(b.rays.thetas().to_vec()),
            },
            kept: b.kept.atoms().to_vec(),
            swept: b
                .swept
                .iter()
                .map(|s| SweptRepr {
                    source: s.source,
                    sector: s.sector,
                })
                .collect(),
        }
    }
}

impl TryFrom<BalayageRepr> for BalayageCharge {
    type Error = Error;
    fn try_from(r: BalayageRepr) -> Result<Self> {
        let bad = |msg: String| Error::InvalidCharge(msg);
        match r.rays {
            None => {
                let up = Sector::upper_half_plane();
                if let Some(a) = r.kept.iter().find(|a| a.z.im > 0.0) {
                    return Err(bad(format!("kept atom {} in the upper half-plane", a.z)));
                }
                let mut swept = Vec::with_capacity(r.swept.len());
                for s in r.swept {
                    if s.sector != up || !(s.source.z.im > 0.0) {
                        return Err(bad(format!("swept atom {} not in the upper half-plane", s.source.z)));
                    }
                    swept.push(SweptAtom::new(s.source, up, 0, 1)?);
                }
                Ok(BalayageCharge {
                    kind: TargetKind::HalfPlane,
                    rays: RaySystem::real_axis(),
                    kept: AtomicCharge::new(r.kept),
                    swept,
                })
            }
            Some(thetas) => {
                let rays = RaySystem::new(&thetas)?;
                if let Some(a) = r
                    .kept
                    .iter()
                    .find(|a| !matches!(classify_point(&rays, a.z), Location::OnSystem { .. }))
                {
                    return Err(bad(format!("kept atom {} is off the ray system", a.z)));
                }
                let sectors = complementary_sectors(&rays);
                let mut swept = Vec::with_capacity(r.swept.len());
                for s in r.swept {
                    let index = sectors
                        .iter()
                        .position(|q| {
                            (q.alpha() - s.sector.alpha()).abs() <= ANGLE_TOL
                                && (q.beta() - s.sector.beta()).abs() <= ANGLE_TOL
                        })
                        .ok_or_else(|| bad("sector is not complementary to the rays".into()))?;
                    let sector = sectors[index];
                    if !sector.contains(s.source.z) {
                        return Err(bad(format!("source {} outside its sector", s.source.z)));
                    }
                    let (ja, jb) = sector_edges(&rays, index);
                    swept.push(SweptAtom::new(s.source, sector, ja, jb)?);
                }
                Ok(BalayageCharge {
                    kind: TargetKind::Rays,
                    rays,
                    kept: AtomicCharge::new(r.kept),
                    swept,
                })
            }
        }
    }
}
