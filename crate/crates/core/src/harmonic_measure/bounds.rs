//! Two-sided estimates of `ω(z, [t1, t2])`, each reported together with
//! the hypothesis under which it was applied.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{hm_interval, hm_sector_disk, Interval};
use crate::error::{Error, Result};
use crate::ray_geometry::{reduce_to_halfplane, Sector};

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: f64,
    pub hypothesis: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Omitted {
    pub name: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub exact: f64,
    pub entries: Vec<BoundEntry>,
    pub omitted: Vec<Omitted>,
}

impl BoundReport {
    /// True when every applied bound brackets the exact value.
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

struct Builder {
    exact: f64,
    entries: Vec<BoundEntry>,
    omitted: Vec<Omitted>,
}

impl Builder {
    fn push(&mut self, name: &'static str, kind: BoundKind, value: f64, hypothesis: String) {
        if !value.is_finite() {
            self.skip(name, "bound is not finite at this point".into());
            return;
        }
        let holds = match kind {
            BoundKind::Lower => value <= self.exact + SLACK,
            BoundKind::Upper => value >= self.exact - SLACK,
        };
        self.entries.push(BoundEntry {
            name,
            kind,
            value,
            hypothesis,
            holds,
        });
    }

    fn skip(&mut self, name: &'static str, reason: String) {
        self.omitted.push(Omitted { name, reason });
    }
}

/// Evaluates every estimate whose hypothesis is met at `(z, I)`; `a ∈ (0, 1)`
/// is the free parameter of the modulus-comparison estimates.
pub fn hm_bounds(z: Complex64, iv: Interval, a: f64) -> Result<BoundReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
    }
    let exact = hm_interval(z, iv)?;
    let mut b = Builder {
        exact,
        entries: Vec::new(),
        omitted: Vec::new(),
    };
    let (t1, t2) = (iv.t1(), iv.t2());
    let (x, y) = (z.re, z.im);
    let len = t2 - t1;
    let num = len * y;
    let den = (x - t1) * (x - t2) + y * y;
    let modulus = z.norm();
    let im_inv = if modulus > 0.0 { y / (modulus * modulus) } else { f64::NAN };

    // chord estimates from arctan x ≤ x on either side of the semicircle
    if den > 0.0 {
        b.push("chord_upper", BoundKind::Upper, num / (PI * den), "outside the closed semidisk (D > 0)".into());
    } else {
        b.skip("chord_upper", "needs D > 0".into());
    }
    if den < 0.0 {
        b.push("chord_lower", BoundKind::Lower, 1.0 + num / (PI * den), "inside the open semidisk (D < 0)".into());
    } else {
        b.skip("chord_lower", "needs D < 0".into());
    }

    // separation from the interval: |z − x0| ≥ b r with b > 1
    let x0 = iv.center();
    let r = iv.half_length();
    let dist = (z - Complex64::new(x0, 0.0)).norm();
    let sep = dist / r;
    if sep > 1.0 {
        let k = (sep - 1.0) / (2.0 * PI * sep);
        let hyp = format!("|z - x0| = {sep} r with {sep} > 1");
        b.push("separated_lower", BoundKind::Lower, k * num / den, hyp.clone());
        let prod = (modulus + t1.abs()) * (modulus + t2.abs());
        b.push("separated_modulus_lower", BoundKind::Lower, k * num / prod, hyp);
    } else {
        b.skip("separated_lower", "z within the closed disk on the interval".into());
        b.skip("separated_modulus_lower", "z within the closed disk on the interval".into());
    }

    // far from the interval: a|z| ≥ max |t_i|
    let tmax = t1.abs().max(t2.abs());
    if modulus > 0.0 && a * modulus >= tmax {
        let hyp = format!("a|z| = {} >= max|t_i| = {tmax}", a * modulus);
        b.push("far_upper", BoundKind::Upper, len / (PI * (1.0 - a).powi(2)) * im_inv, hyp.clone());
        b.push("far_lower", BoundKind::Lower, len * (1.0 - a) / (8.0 * PI) * im_inv, hyp);
    } else {
        b.skip("far_upper", "needs a|z| >= max|t_i|".into());
        b.skip("far_lower", "needs a|z| >= max|t_i|".into());
    }

    // close to the origin: a·min|t| ≥ |z|, interval away from 0
    let tmin = if t1 * t2 > 0.0 { t1.abs().min(t2.abs()) } else { 0.0 };
    if modulus > 0.0 && tmin > 0.0 && a * tmin >= modulus {
        b.push(
            "near_upper",
            BoundKind::Upper,
            len * a * a / (PI * (1.0 - a).powi(2)) * im_inv,
            format!("a min|t| = {} >= |z| = {modulus}", a * tmin),
        );
    } else {
        b.skip("near_upper", "needs a min|t| >= |z| > 0".into());
    }

    // one-signed intervals; the negative case is the mirror z ↦ −z̄
    if modulus > 0.0 && (t1 >= 0.0 || t2 <= 0.0) {
        let (u1, u2, cos) = if t1 >= 0.0 {
            (t1, t2, x / modulus)
        } else {
            (-t2, -t1, -x / modulus)
        };
        let side = if t1 >= 0.0 { "t1 >= 0" } else { "t2 <= 0" };
        let g = (u1 * u2).sqrt();
        let cone = 2.0 * g / (u1 + u2);
        if cos <= 0.0 {
            b.push("obtuse_upper", BoundKind::Upper, len / PI * im_inv, format!("{side}, cos arg z = {cos} <= 0"));
        } else {
            b.skip("obtuse_upper", "needs cos arg z <= 0".into());
        }
        if cos > -1.0 && cos < cone {
            let d = modulus - g;
            b.push(
                "cone_upper",
                BoundKind::Upper,
                num / (PI * d * d),
                format!("{side}, -1 < cos arg z = {cos} < {cone}"),
            );
        } else {
            b.skip("cone_upper", format!("needs -1 < cos arg z < {cone}"));
        }
        if cos <= a * cone {
            b.push(
                "cone_upper_a",
                BoundKind::Upper,
                len / (PI * (1.0 - a * a)) * im_inv,
                format!("{side}, cos arg z = {cos} <= {}", a * cone),
            );
        } else {
            b.skip("cone_upper_a", format!("needs cos arg z <= {}", a * cone));
        }
        if u1 > 0.0 && cos > -1.0 && cos < cone && modulus >= u1 {
            b.push(
                "cone_lower",
                BoundKind::Lower,
                u1 / (8.0 * PI * u2) * len * im_inv,
                format!("{side}, -1 < cos arg z < {cone}, |z| >= min|t_i|"),
            );
        } else {
            b.skip(
                "cone_lower",
                "needs 0 < |t1| < |t2| on one side, the cone condition and |z| >= min|t_i|".into(),
            );
        }
    } else {
        for name in ["obtuse_upper", "cone_upper", "cone_upper_a", "cone_lower"] {
            b.skip(name, "needs z != 0 and an interval on one side of 0".into());
        }
    }

    // disk on the interval as diameter
    if dist > r {
        let v = (2.0 * r * dist / (dist * dist - r * r)).atan() / PI;
        b.push("disk_exterior_upper", BoundKind::Upper, v, format!("|z - x0| = {dist} > r = {r}"));
    } else if dist == r {
        b.push("disk_exterior_upper", BoundKind::Upper, 0.5, "z on the semicircle".into());
    } else {
        b.skip("disk_exterior_upper", "z inside the disk".into());
    }
    if dist < r {
        let q = 2.0 * r * dist / (r * r - dist * dist);
        let hyp = format!("|z - x0| = {dist} < r = {r}");
        b.push("disk_interior_lower", BoundKind::Lower, 1.0 - q.atan() / PI, hyp.clone());
        b.push("disk_interior_linear_lower", BoundKind::Lower, 1.0 - q / PI, hyp);
    } else {
        b.skip("disk_interior_lower", "z not inside the open disk".into());
        b.skip("disk_interior_linear_lower", "z not inside the open disk".into());
    }

    Ok(BoundReport {
        exact,
        entries: b.entries,
        omitted: b.omitted,
    })
}

fn sector_report(exact: f64, name: &'static str, value: Option<(f64, String)>, reason: &str) -> BoundReport {
    let mut b = Builder {
        exact,
        entries: Vec::new(),
        omitted: Vec::new(),
    };
    match value {
        Some((v, hyp)) => b.push(name, BoundKind::Upper, v, hyp),
        None => b.skip(name, reason.into()),
    }
    BoundReport {
        exact,
        entries: b.entries,
        omitted: b.omitted,
    }
}

/// Upper estimate of the sector harmonic measure of the boundary inside
/// `D̄(r)`, for `a|z| ≥ r`.
pub fn sector_disk_bound(sec: &Sector, z: Complex64, r: f64, a: f64) -> Result<BoundReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
    }
    let exact = hm_sector_disk(sec, z, r)?;
    let rho = sec.exponent();
    let value = if a * z.norm() >= r {
        let w = reduce_to_halfplane(sec, z)?;
        let v = 2.0 * r.powf(rho) / (PI * (1.0 - a.powf(rho)).powi(2)) * (w.im / w.norm_sqr());
        Some((v, format!("a|z| = {} >= r = {r}", a * z.norm())))
    } else {
        None
    };
    Ok(sector_report(exact, "sector_disk_upper", value, "needs a|z| >= r"))
}

/// Upper estimate of the sector harmonic measure of the boundary outside
/// `D(r)`, for `a r ≥ |z|`.
pub fn sector_exterior_bound(sec: &Sector, z: Complex64, r: f64, a: f64) -> Result<BoundReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
    }
    let exact = 1.0 - hm_sector_disk(sec, z, r)?;
    let rho = sec.exponent();
    let value = if a * r >= z.norm() {
        let w = reduce_to_halfplane(sec, z)?;
        let v = 2.0 * r.powf(-rho) / (PI * (1.0 - a.powf(rho)).powi(2)) * w.im;
        Some((v, format!("a r = {} >= |z| = {}", a * r, z.norm())))
    } else {
        None
    };
    Ok(sector_report(exact, "sector_exterior_upper", value, "needs a r >= |z|"))
}
