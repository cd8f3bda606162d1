//! Ray systems with common vertex at the origin, their complementary
//! sectors, and the power map of a sector onto the upper half-plane.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angular tolerance for deciding that a point lies on a ray.
pub const ANGLE_TOL: f64 = 1e-12;

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

fn angular_distance(a: f64, b: f64) -> f64 {
    ((a - b + PI).rem_euclid(TAU) - PI).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    theta: f64,
}

impl Ray {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidRaySystem(format!("non-finite angle {theta}")));
        }
        Ok(Ray {
            theta: normalize_angle(theta),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The point `t e^{iθ}`.
    pub fn point(&self, t: f64) -> Complex64 {
        Complex64::from_polar(t, self.theta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RaysRepr", into = "RaysRepr")]
pub struct RaySystem {
    thetas: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaysRepr {
    rays: Vec<f64>,
}

impl TryFrom<RaysRepr> for RaySystem {
    type Error = Error;
    fn try_from(r: RaysRepr) -> Result<Self> {
        RaySystem::new(&r.rays)
    }
}

impl From<RaySystem> for RaysRepr {
    fn from(s: RaySystem) -> Self {
        RaysRepr { rays: s.thetas }
    }
}

impl RaySystem {
    /// Angles are normalized and sorted; coincident rays are rejected.
    pub fn new(thetas: &[f64]) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidRaySystem("no rays".into()));
        }
        let mut ts = Vec::with_capacity(thetas.len());
        for &t in thetas {
            ts.push(Ray::new(t)?.theta);
        }
        ts.sort_by(f64::total_cmp);
        for w in ts.windows(2) {
            if w[1] - w[0] <= ANGLE_TOL {
                return Err(Error::InvalidRaySystem(format!("duplicate ray at {}", w[0])));
            }
        }
        if ts.len() > 1 && ts[0] + TAU - ts[ts.len() - 1] <= ANGLE_TOL {
            return Err(Error::InvalidRaySystem("duplicate ray at 0".into()));
        }
        Ok(RaySystem { thetas: ts })
    }

    /// The real axis `{0, π}`.
    pub fn real_axis() -> Self {
        RaySystem { thetas: vec![0.0, PI] }
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ray(&self, j: usize) -> Ray {
        Ray { theta: self.thetas[j] }
    }

    pub fn is_real_axis(&self) -> bool {
        self.thetas.len() == 2 && self.thetas[0] == 0.0 && (self.thetas[1] - PI).abs() <= ANGLE_TOL
    }

    /// Index of the ray at angle `theta`, if any.
    pub fn ray_index(&self, theta: f64) -> Option<usize> {
        self.thetas
            .iter()
            .position(|&t| angular_distance(t, theta) <= ANGLE_TOL)
    }
}

/// Open sector `{α < arg z < β}`; angles are stored unnormalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Sector {
    alpha: f64,
    beta: f64,
}

impl TryFrom<(f64, f64)> for Sector {
    type Error = Error;
    fn try_from((a, b): (f64, f64)) -> Result<Self> {
        Sector::new(a, b)
    }
}

impl From<Sector> for (f64, f64) {
    fn from(s: Sector) -> Self {
        (s.alpha, s.beta)
    }
}

/// Which edge of a sector a boundary point sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Alpha,
    Beta,
}

impl Sector {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ap = beta - alpha;
        if !alpha.is_finite() || !beta.is_finite() || ap <= 0.0 || ap > TAU + ANGLE_TOL {
            return Err(Error::InvalidSector(alpha, beta));
        }
        Ok(Sector { alpha, beta })
    }

    /// The upper half-plane `(0, π)`.
    pub fn upper_half_plane() -> Self {
        Sector { alpha: 0.0, beta: PI }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn aperture(&self) -> f64 {
        self.beta - self.alpha
    }

    /// Exponent `ρ = π/(β − α)` of the power map.
    pub fn exponent(&self) -> f64 {
        PI / self.aperture()
    }

    fn offset(&self, z: Complex64) -> f64 {
        (z.arg() - self.alpha).rem_euclid(TAU)
    }

    /// True when `z` is in the open sector.
    pub fn contains(&self, z: Complex64) -> bool {
        if z == Complex64::new(0.0, 0.0) {
            return false;
        }
        let phi = self.offset(z);
        phi > ANGLE_TOL && phi < self.aperture() - ANGLE_TOL
    }

    /// Image of the boundary point at radius `t` on `edge`.
    pub fn edge_image(&self, edge: Edge, t: f64) -> f64 {
        let s = t.powf(self.exponent());
        match edge {
            Edge::Alpha => s,
            Edge::Beta => -s,
        }
    }

    /// Preimage of a real point of the reduced line: edge and radius.
    pub fn edge_preimage(&self, s: f64) -> (Edge, f64) {
        let t = s.abs().powf(1.0 / self.exponent());
        if s >= 0.0 {
            (Edge::Alpha, t)
        } else {
            (Edge::Beta, t)
        }
    }

    /// Angle of an edge.
    pub fn edge_angle(&self, edge: Edge) -> f64 {
        match edge {
            Edge::Alpha => self.alpha,
            Edge::Beta => self.beta,
        }
    }
}

/// Maps the closed sector onto the closed upper half-plane by
/// `z ↦ (z e^{-iα})^{π/(β−α)}`, with the branch positive on `ℝ⁺`.
pub fn reduce_to_halfplane(sec: &Sector, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroPoint);
    }
    let ap = sec.aperture();
    let mut phi = sec.offset(z);
    if phi > ap + ANGLE_TOL {
        if phi >= TAU - ANGLE_TOL {
            phi = 0.0;
        } else {
            return Err(Error::PointNotInSector(z));
        }
    }
    let rho = sec.exponent();
    let m = z.norm().powf(rho);
    if phi <= ANGLE_TOL {
        return Ok(Complex64::new(m, 0.0));
    }
    if (phi - ap).abs() <= ANGLE_TOL {
        return Ok(Complex64::new(-m, 0.0));
    }
    Ok(Complex64::from_polar(m, rho * phi))
}

/// The complementary sectors; sector `i` has edges on rays `i` and `i + 1 (mod k)`.
pub fn complementary_sectors(s: &RaySystem) -> Vec<Sector> {
    let t = s.thetas();
    let k = t.len();
    (0..k)
        .map(|i| {
            let beta = if i + 1 < k { t[i + 1] } else { t[0] + TAU };
            Sector { alpha: t[i], beta }
        })
        .collect()
}

/// Ray indices carrying the alpha and beta edges of sector `i`.
pub fn sector_edges(s: &RaySystem, i: usize) -> (usize, usize) {
    (i, (i + 1) % s.len())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    /// On the system; `ray` is `None` for the origin.
    OnSystem { ray: Option<usize> },
    InSector { index: usize, sector: Sector },
}

pub fn classify_point(s: &RaySystem, z: Complex64) -> Location {
    if z == Complex64::new(0.0, 0.0) {
        return Location::OnSystem { ray: None };
    }
    let arg = z.arg();
    if let Some(j) = s.ray_index(arg) {
        return Location::OnSystem { ray: Some(j) };
    }
    let sectors = complementary_sectors(s);
    for (index, sector) in sectors.iter().enumerate() {
        if sector.offset(z) < sector.aperture() {
            return Location::InSector {
                index,
                sector: *sector,
            };
        }
    }
    // unreachable for valid systems: sectors cover every direction
    Location::InSector {
        index: 0,
        sector: sectors[0],
    }
}
