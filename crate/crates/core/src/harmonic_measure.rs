//! Harmonic measure of the upper half-plane, of sectors and of the
//! complements of ray systems.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::ray_geometry::{classify_point, reduce_to_halfplane, sector_edges, Edge, Location, RaySystem, Sector};

mod bounds;
pub use bounds::{hm_bounds, sector_disk_bound, sector_exterior_bound, BoundEntry, BoundKind, BoundReport, Omitted};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    t1: f64,
    t2: f64,
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;
    fn try_from((t1, t2): (f64, f64)) -> Result<Self> {
        Interval::new(t1, t2)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(iv: Interval) -> Self {
        (iv.t1, iv.t2)
    }
}

impl Interval {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        if !(t1.is_finite() && t2.is_finite() && t1 < t2) {
            return Err(Error::InvalidInterval(t1, t2));
        }
        Ok(Interval { t1, t2 })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.t1 + self.t2)
    }

    pub fn half_length(&self) -> f64 {
        0.5 * (self.t2 - self.t1)
    }
}

/// Radial piece `{t e^{iθ_j} : a ≤ t ≤ b}` of ray `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySegment {
    pub ray_index: usize,
    pub a: f64,
    pub b: f64,
}

impl BoundarySegment {
    pub fn new(ray_index: usize, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b) {
            return Err(Error::InvalidSegment(format!("[{a}, {b}]")));
        }
        Ok(BoundarySegment { ray_index, a, b })
    }
}

/// Finite union of ray segments and closed origin-centred disks, intersected with `S`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundarySet {
    #[serde(default)]
    pub segments: Vec<BoundarySegment>,
    #[serde(default)]
    pub disks: Vec<f64>,
}

pub fn poisson_kernel(t: f64, z: Complex64) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::NotInUpperHalfPlane(z));
    }
    let dx = t - z.re;
    Ok(z.im / (PI * (dx * dx + z.im * z.im)))
}

/// Harmonic measure of `[t1, t2]` at `z` with `Im z ≥ 0`.
///
/// Off the axis the value is the normalized angle subtended by the interval,
/// written as a single arctangent; the sign of
/// `D = |z|² − Re z (t1 + t2) + t1 t2` tells whether `z` lies outside or
/// inside the semidisk on the interval. On the axis it is the Dirac value.
pub fn hm_interval(z: Complex64, iv: Interval) -> Result<f64> {
    let (t1, t2) = (iv.t1, iv.t2);
    if z.im < 0.0 || z.im.is_nan() {
        return Err(Error::NotInUpperHalfPlane(z));
    }
    if z.im == 0.0 {
        if z.re == t1 || z.re == t2 {
            return Err(Error::EndpointSingularity(z.re));
        }
        return Ok(if t1 < z.re && z.re < t2 { 1.0 } else { 0.0 });
    }
    let num = (t2 - t1) * z.im;
    let den = (z.re - t1) * (z.re - t2) + z.im * z.im;
    Ok(if den > 0.0 {
        (num / den).atan() / PI
    } else if den < 0.0 {
        1.0 + (num / den).atan() / PI
    } else {
        0.5
    })
}

/// As [`hm_interval`] but for `Im z > 0` and possibly infinite endpoints.
pub(crate) fn hm_span(z: Complex64, t1: f64, t2: f64) -> f64 {
    if t1.is_finite() && t2.is_finite() {
        return match Interval::new(t1, t2) {
            Ok(iv) => hm_interval(z, iv).unwrap_or(0.0),
            Err(_) => 0.0,
        };
    }
    if t1 >= t2 {
        return 0.0;
    }
    let ang = |t: f64| -> f64 {
        if t == f64::INFINITY {
            0.5 * PI
        } else if t == f64::NEG_INFINITY {
            -0.5 * PI
        } else {
            ((t - z.re) / z.im).atan()
        }
    };
    (ang(t2) - ang(t1)) / PI
}

/// Quadrature of the Poisson kernel over the interval; an oracle for [`hm_interval`].
pub fn hm_interval_quad(z: Complex64, iv: Interval) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::NotInUpperHalfPlane(z));
    }
    let (x, y) = (z.re, z.im);
    let f = |t: f64| {
        let dx = t - x;
        y / (PI * (dx * dx + y * y))
    };
    let breaks = [x - y, x, x + y];
    let r = quad::integrate_with_breaks(f, iv.t1, iv.t2, &breaks, Tolerance::abs(1e-10))?;
    Ok(r.value)
}

fn interior(sec: &Sector, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroPoint);
    }
    if !sec.contains(z) {
        return Err(Error::PointNotInSector(z));
    }
    reduce_to_halfplane(sec, z)
}

/// Harmonic measure in a sector of the edge piece `{t e^{i·edge} : a ≤ t ≤ b}`.
pub fn hm_sector_segment(sec: &Sector, z: Complex64, edge: Edge, a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b) {
        return Err(Error::InvalidSegment(format!("[{a}, {b}]")));
    }
    let w = interior(sec, z)?;
    let (p, q) = (sec.edge_image(edge, a), sec.edge_image(edge, b));
    let iv = Interval::new(p.min(q), p.max(q))?;
    hm_interval(w, iv)
}

/// Harmonic measure in a sector of the boundary part inside the closed disk `D̄(r)`.
pub fn hm_sector_disk(sec: &Sector, z: Complex64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {r}")));
    }
    let w = interior(sec, z)?;
    let s = r.powf(sec.exponent());
    hm_interval(w, Interval::new(-s, s)?)
}

/// Harmonic measure in a sector of the boundary part outside the open disk `D(r)`.
pub fn hm_sector_exterior(sec: &Sector, z: Complex64, r: f64) -> Result<f64> {
    Ok(1.0 - hm_sector_disk(sec, z, r)?)
}

fn merge(mut ivs: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    ivs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (a, b) in ivs {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Harmonic measure of `B ⊂ S` for the complement of the ray system.
pub fn hm_system(s: &RaySystem, z: Complex64, set: &BoundarySet) -> Result<f64> {
    for seg in &set.segments {
        BoundarySegment::new(seg.ray_index, seg.a, seg.b)?;
        if seg.ray_index >= s.len() {
            return Err(Error::InvalidSegment(format!("ray index {} out of range", seg.ray_index)));
        }
    }
    for &r in &set.disks {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("disk radius {r}")));
        }
    }
    match classify_point(s, z) {
        Location::OnSystem { ray: None } => {
            let hit = !set.disks.is_empty() || set.segments.iter().any(|g| g.a == 0.0);
            Ok(if hit { 1.0 } else { 0.0 })
        }
        Location::OnSystem { ray: Some(j) } => {
            let t = z.norm();
            let hit = set.disks.iter().any(|&r| t <= r)
                || set.segments.iter().any(|g| g.ray_index == j && g.a <= t && t <= g.b);
            Ok(if hit { 1.0 } else { 0.0 })
        }
        Location::InSector { index, sector } => {
            let w = reduce_to_halfplane(&sector, z)?;
            let (ja, jb) = sector_edges(s, index);
            let on_ray = |j: usize| {
                let mut v: Vec<(f64, f64)> = set
                    .segments
                    .iter()
                    .filter(|g| g.ray_index == j)
                    .map(|g| (g.a, g.b))
                    .collect();
                v.extend(set.disks.iter().map(|&r| (0.0, r)));
                merge(v)
            };
            let mut total = 0.0;
            for (a, b) in on_ray(ja) {
                let (p, q) = (sector.edge_image(Edge::Alpha, a), sector.edge_image(Edge::Alpha, b));
                total += hm_interval(w, Interval::new(p, q)?)?;
            }
            for (a, b) in on_ray(jb) {
                let (p, q) = (sector.edge_image(Edge::Beta, b), sector.edge_image(Edge::Beta, a));
                total += hm_interval(w, Interval::new(p, q)?)?;
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn kernel_values() {
        assert!((poisson_kernel(0.0, c(0.0, 1.0)).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((poisson_kernel(1.0, c(0.0, 1.0)).unwrap() - 0.5 / PI).abs() < 1e-16);
        assert!(poisson_kernel(0.0, c(1.0, 0.0)).is_err());
        let z = c(0.3, 1.7);
        let total = quad::integrate_real_line(|t| poisson_kernel(t, z).unwrap(), &[0.3], Tolerance::abs(1e-10))
            .unwrap()
            .value;
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn interval_examples() {
        assert!((hm_interval(c(0.0, 1.0), iv(-1.0, 1.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((hm_interval(c(0.0, 3f64.sqrt()), iv(-1.0, 1.0)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // frozen from quadrature of the kernel
        assert!((hm_interval(c(0.0, 2.0), iv(-1.0, 1.0)).unwrap() - 0.295_167_235_300_866_6).abs() < 1e-12);
        assert_eq!(hm_interval(c(0.5, 0.0), iv(0.0, 1.0)).unwrap(), 1.0);
        assert_eq!(hm_interval(c(2.0, 0.0), iv(0.0, 1.0)).unwrap(), 0.0);
        assert_eq!(hm_interval(c(1.0, 0.0), iv(0.0, 1.0)), Err(Error::EndpointSingularity(1.0)));
        assert!(hm_interval(c(0.0, -1.0), iv(0.0, 1.0)).is_err());
    }

    #[test]
    fn quadrature_examples() {
        assert!((hm_interval_quad(c(0.0, 1.0), iv(-1.0, 1.0)).unwrap() - 0.5).abs() < 1e-8);
        let z = c(0.5, 0.5);
        assert!((hm_interval_quad(z, iv(0.0, 1.0)).unwrap() - hm_interval(z, iv(0.0, 1.0)).unwrap()).abs() < 1e-8);
        let expect = (20.0f64 / 99.0).atan() / PI;
        assert!((hm_interval_quad(c(0.0, 10.0), iv(-1.0, 1.0)).unwrap() - expect).abs() < 1e-8);
    }

    #[test]
    fn semicircle_value_is_half() {
        for k in 1..50 {
            let th = PI * k as f64 / 50.0;
            let z = c(3.0, 0.0) + Complex64::from_polar(2.0, th);
            assert!((hm_interval(z, iv(1.0, 5.0)).unwrap() - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn half_lines() {
        let z = c(0.7, 1.3);
        let right = hm_span(z, 0.0, f64::INFINITY);
        let left = hm_span(z, f64::NEG_INFINITY, 0.0);
        assert!((right + left - 1.0).abs() < 1e-15);
        assert!((hm_span(z, 0.0, 2.0) - hm_interval(z, iv(0.0, 2.0)).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn sector_segment_examples() {
        let up = Sector::upper_half_plane();
        assert!((hm_sector_segment(&up, c(0.0, 1.0), Edge::Alpha, 0.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        let q = Sector::new(0.0, PI / 2.0).unwrap();
        let z = Complex64::from_polar(2.0, PI / 4.0);
        let v = hm_sector_segment(&q, z, Edge::Alpha, 0.0, 1.0).unwrap();
        assert!((v - 0.25f64.atan() / PI).abs() < 1e-14);
        assert!((v - 0.077_979_130_377_369_3).abs() < 1e-12);
        // beta edge is the mirror image in this symmetric position
        let w = hm_sector_segment(&q, z, Edge::Beta, 0.0, 1.0).unwrap();
        assert!((v - w).abs() < 1e-14);
        assert_eq!(hm_sector_segment(&q, c(0.0, 0.0), Edge::Alpha, 0.0, 1.0), Err(Error::ZeroPoint));
    }

    #[test]
    fn full_aperture_segment_matches_reduced_quadrature() {
        let s = Sector::new(0.0, TAU).unwrap();
        let z = c(-1.0, 0.0);
        let exact = hm_sector_segment(&s, z, Edge::Alpha, 0.0, 1.0).unwrap();
        let w = reduce_to_halfplane(&s, z).unwrap();
        let q = quad::integrate(|t| poisson_kernel(t, w).unwrap(), 0.0, 1.0, Tolerance::abs(1e-10))
            .unwrap()
            .value;
        assert!((exact - q).abs() < 1e-8);
        assert!((exact - 0.25).abs() < 1e-14);
    }

    #[test]
    fn sector_disk_examples() {
        let q = Sector::new(0.0, PI / 2.0).unwrap();
        let z = Complex64::from_polar(2.0, PI / 4.0);
        let v = hm_sector_disk(&q, z, 1.0).unwrap();
        assert!((v - (8.0f64 / 15.0).atan() / PI).abs() < 1e-14);
        assert!((v - 0.155_958_260_754_738_7).abs() < 1e-12);
        let up = Sector::upper_half_plane();
        for b in [1.5f64, 2.0, 7.0] {
            let v = hm_sector_disk(&up, c(0.0, b), 1.0).unwrap();
            assert!((v - (2.0 * b / (b * b - 1.0)).atan() / PI).abs() < 1e-14);
        }
        let e = hm_sector_exterior(&q, z, 1.0).unwrap();
        assert!((e + v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn system_examples() {
        let axis = RaySystem::real_axis();
        let set = BoundarySet {
            segments: vec![BoundarySegment::new(0, 0.0, 1.0).unwrap(), BoundarySegment::new(1, 0.0, 1.0).unwrap()],
            disks: vec![],
        };
        assert!((hm_system(&axis, c(0.0, 1.0), &set).unwrap() - 0.5).abs() < 1e-15);
        let seg = BoundarySet {
            segments: vec![BoundarySegment::new(0, 0.0, 3.0).unwrap()],
            disks: vec![],
        };
        assert_eq!(hm_system(&axis, c(2.0, 0.0), &seg).unwrap(), 1.0);
        assert_eq!(hm_system(&axis, c(-2.0, 0.0), &seg).unwrap(), 0.0);
        let cross = RaySystem::new(&[0.0, PI / 2.0, PI, 1.5 * PI]).unwrap();
        let disk = BoundarySet {
            segments: vec![],
            disks: vec![1.0],
        };
        let v = hm_system(&cross, Complex64::from_polar(2.0, PI / 4.0), &disk).unwrap();
        assert!((v - 0.155_958_260_754_738_7).abs() < 1e-12);
    }

    #[test]
    fn system_overlapping_pieces_are_not_double_counted() {
        let axis = RaySystem::real_axis();
        let set = BoundarySet {
            segments: vec![BoundarySegment::new(0, 0.5, 3.0).unwrap()],
            disks: vec![1.0],
        };
        let z = c(0.2, 0.9);
        let expect = hm_interval(z, iv(-1.0, 3.0)).unwrap();
        assert!((hm_system(&axis, z, &set).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn single_ray_disk_is_whole_circle_part() {
        let s = RaySystem::new(&[0.0]).unwrap();
        let set = BoundarySet {
            segments: vec![],
            disks: vec![100.0],
        };
        let v = hm_system(&s, c(-1.0, 0.5), &set).unwrap();
        assert!(v > 0.9 && v < 1.0);
    }

    #[test]
    fn far_probability() {
        for &(x, y) in &[(0.0, 0.1), (10.0, 0.1), (-7.0, 7.0), (0.0, 10.0)] {
            assert!(hm_interval(c(x, y), iv(-1e6, 1e6)).unwrap() >= 1.0 - 1e-5);
        }
    }

    proptest! {
        #[test]
        fn additivity(x in -20.0f64..20.0, y in 0.01f64..20.0, a in -10.0f64..10.0, d1 in 0.01f64..5.0, d2 in 0.01f64..5.0) {
            let z = c(x, y);
            let (b, cc) = (a + d1, a + d1 + d2);
            let whole = hm_interval(z, iv(a, cc)).unwrap();
            let parts = hm_interval(z, iv(a, b)).unwrap() + hm_interval(z, iv(b, cc)).unwrap();
            prop_assert!((whole - parts).abs() < 1e-12);
        }

        #[test]
        fn matches_arctan_difference(x in -50.0f64..50.0, y in 0.01f64..50.0, a in -10.0f64..10.0, d in 0.01f64..10.0) {
            let z = c(x, y);
            let direct = (((a + d - x) / y).atan() - ((a - x) / y).atan()) / PI;
            prop_assert!((hm_interval(z, iv(a, a + d)).unwrap() - direct).abs() < 1e-12);
        }

        #[test]
        fn value_in_unit_range(x in -50.0f64..50.0, y in 0.0f64..50.0, a in -10.0f64..10.0, d in 0.01f64..10.0) {
            if let Ok(v) = hm_interval(c(x, y), iv(a, a + d)) {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}
