//! Finite atomic charges, their counting functions, and the Blaschke and
//! Lindelöf sums.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ray_geometry::{complementary_sectors, reduce_to_halfplane, RaySystem, Sector};
use crate::step::StepFunction;
use crate::trend::{self, TrendReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AtomRepr", into = "AtomRepr")]
pub struct Atom {
    pub z: Complex64,
    pub mass: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr {
    re: f64,
    im: f64,
    mass: f64,
}

impl TryFrom<AtomRepr> for Atom {
    type Error = Error;
    fn try_from(a: AtomRepr) -> Result<Self> {
        Atom::new(Complex64::new(a.re, a.im), a.mass)
    }
}

impl From<Atom> for AtomRepr {
    fn from(a: Atom) -> Self {
        AtomRepr {
            re: a.z.re,
            im: a.z.im,
            mass: a.mass,
        }
    }
}

impl Atom {
    pub fn new(z: Complex64, mass: f64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidCharge(format!("non-finite location {z}")));
        }
        if !mass.is_finite() || mass == 0.0 {
            return Err(Error::InvalidCharge(format!("mass {mass} at {z}")));
        }
        Ok(Atom { z, mass })
    }

    pub fn unit(z: Complex64) -> Result<Self> {
        Atom::new(z, 1.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomicCharge {
    atoms: Vec<Atom>,
}

impl AtomicCharge {
    pub fn new(atoms: Vec<Atom>) -> Self {
        AtomicCharge { atoms }
    }

    pub fn empty() -> Self {
        AtomicCharge::default()
    }

    pub fn point(z: Complex64, mass: f64) -> Result<Self> {
        Ok(AtomicCharge {
            atoms: vec![Atom::new(z, mass)?],
        })
    }

    /// Counting measure of a finite point sequence (unit masses, repeats allowed).
    pub fn from_points<I: IntoIterator<Item = Complex64>>(points: I) -> Result<Self> {
        let atoms = points.into_iter().map(Atom::unit).collect::<Result<Vec<_>>>()?;
        Ok(AtomicCharge { atoms })
    }

    /// Truncation `k = 1..=n` of a generated sequence.
    pub fn from_fn<F: Fn(usize) -> Atom>(n: usize, f: F) -> Self {
        AtomicCharge {
            atoms: (1..=n).map(f).collect(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass.abs()).sum()
    }

    fn map_masses<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        AtomicCharge {
            atoms: self
                .atoms
                .iter()
                .filter_map(|a| {
                    let m = f(a.mass);
                    (m != 0.0).then_some(Atom { z: a.z, mass: m })
                })
                .collect(),
        }
    }

    /// The variation `|ν|`.
    pub fn variation(&self) -> Self {
        self.map_masses(f64::abs)
    }

    pub fn positive_part(&self) -> Self {
        self.map_masses(|m| m.max(0.0))
    }

    pub fn negative_part(&self) -> Self {
        self.map_masses(|m| (-m).max(0.0))
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map_masses(|m| c * m)
    }

    /// Sum of charges, as a concatenation of atom lists.
    pub fn add(&self, other: &AtomicCharge) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        AtomicCharge { atoms }
    }

    pub fn restrict<P: Fn(Complex64) -> bool>(&self, pred: P) -> Self {
        AtomicCharge {
            atoms: self.atoms.iter().copied().filter(|a| pred(a.z)).collect(),
        }
    }

    /// Restriction to the closed upper half-plane.
    pub fn closed_upper(&self) -> Self {
        self.restrict(|z| z.im >= 0.0)
    }

    /// Mass of the closed disk `D̄(c, r)`.
    pub fn disk_mass(&self, c: Complex64, r: f64) -> f64 {
        self.atoms.iter().filter(|a| (a.z - c).norm() <= r).map(|a| a.mass).sum()
    }

    /// `r ↦ ν(D̄(r))`, or `|ν|(D̄(r))` when `variation` is set.
    pub fn radial_counting(&self, variation: bool) -> StepFunction {
        let jumps = self
            .atoms
            .iter()
            .map(|a| (a.z.norm(), if variation { a.mass.abs() } else { a.mass }))
            .collect();
        StepFunction::from_jumps(0.0, jumps).unwrap_or_else(|_| StepFunction::zero())
    }

    /// Counting function around `c`: `t ↦ ν(D̄(c, t))`.
    pub fn counting_about(&self, c: Complex64, variation: bool) -> StepFunction {
        let jumps = self
            .atoms
            .iter()
            .map(|a| ((a.z - c).norm(), if variation { a.mass.abs() } else { a.mass }))
            .collect();
        StepFunction::from_jumps(0.0, jumps).unwrap_or_else(|_| StepFunction::zero())
    }

    /// Distribution function on ℝ: `ν([0, x])` for `x ≥ 0`, `−ν([x, 0))` for `x < 0`.
    pub fn distribution_on_real(&self, x: f64) -> Result<f64> {
        if let Some(a) = self.atoms.iter().find(|a| a.z.im != 0.0) {
            return Err(Error::SupportOffAxis(a.z));
        }
        Ok(if x >= 0.0 {
            self.atoms.iter().filter(|a| 0.0 <= a.z.re && a.z.re <= x).map(|a| a.mass).sum()
        } else {
            -self.atoms.iter().filter(|a| x <= a.z.re && a.z.re < 0.0).map(|a| a.mass).sum::<f64>()
        })
    }

    /// `Σ_{Im z > 0, |z| > r0} |m| Im(1/z̄)`.
    pub fn blaschke_halfplane(&self, r0: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.z.im > 0.0 && a.z.norm() > r0)
            .map(|a| a.mass.abs() * a.z.im / a.z.norm_sqr())
            .sum()
    }

    /// Reduced-coordinate Blaschke sum `Σ |m| (−Im 1/z')` over atoms of the
    /// open sector with `|z| > r0`.
    pub fn blaschke_sector(&self, sec: &Sector, r0: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| sec.contains(a.z) && a.z.norm() > r0)
            .map(|a| {
                let w = reduce_to_halfplane(sec, a.z).expect("interior point");
                a.mass.abs() * w.im / w.norm_sqr()
            })
            .sum()
    }

    pub fn blaschke_outside_system(&self, s: &RaySystem, r0: f64) -> BlaschkeReport {
        let sectors: Vec<SectorSum> = complementary_sectors(s)
            .into_iter()
            .map(|sector| SectorSum {
                sector,
                value: self.blaschke_sector(&sector, r0),
            })
            .collect();
        let total = sectors.iter().map(|s| s.value).sum::<f64>();
        BlaschkeReport {
            finite: total.is_finite(),
            sectors,
            total,
        }
    }

    /// `Σ_{r0 < |z| ≤ r} m / z^q`.
    pub fn lindelof_sum(&self, q: u32, r0: f64, r: f64) -> Complex64 {
        self.atoms
            .iter()
            .filter(|a| {
                let m = a.z.norm();
                r0 < m && m <= r
            })
            .map(|a| a.mass / a.z.powu(q))
            .sum()
    }

    /// Blaschke partial sums over dyadic radii with a divergence verdict;
    /// meaningful for truncations of infinite sequences.
    pub fn blaschke_trend(&self, r0: f64) -> TrendReport {
        let upper = self.restrict(|z| z.im > 0.0 && z.norm() > r0);
        let rmax = upper.atoms.iter().map(|a| a.z.norm()).fold(2.0 * r0, f64::max);
        let trace = trend::dyadic_grid(2.0 * r0, rmax, 4)
            .into_iter()
            .map(|r| (r, upper.restrict(|z| z.norm() <= r).blaschke_halfplane(r0)))
            .collect();
        trend::trend(trace)
    }

    /// `|Σ_{r0 < |z| ≤ r} m/z^q|` over dyadic radii with a boundedness verdict.
    pub fn lindelof_trend(&self, q: u32, r0: f64) -> TrendReport {
        let rmax = self.atoms.iter().map(|a| a.z.norm()).fold(2.0 * r0, f64::max);
        let trace = trend::dyadic_grid(2.0 * r0, rmax, 4)
            .into_iter()
            .map(|r| (r, self.lindelof_sum(q, r0, r).norm()))
            .collect();
        trend::trend(trace)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorSum {
    pub sector: Sector,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeReport {
    pub sectors: Vec<SectorSum>,
    pub total: f64,
    pub finite: bool,
}
