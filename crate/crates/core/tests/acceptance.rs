//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use balayage_core::balayage::{
    balayage_system, check_fubini, check_ges_bound, check_lindelof_preservation, check_lipschitz,
    check_system_growth_bound, check_thcup_bound, lipschitz_form_fit, GrowthTarget, TestFunction,
};
use balayage_core::charges::{Atom, AtomicCharge};
use balayage_core::growth_scales::{parts_identity_inf, parts_identity_zero};
use balayage_core::harmonic_measure::{hm_bounds, hm_interval, hm_interval_quad, sector_disk_bound, sector_exterior_bound, Interval};
use balayage_core::ray_geometry::{RaySystem, Sector};
use balayage_core::regular_growth::{angular_density, crg_on_rays, indicator_estimate, CrgConfig};
use balayage_core::step::StepFunction;
use balayage_core::subharmonic::{
    carleman_check, class_a_functionals, kernel_kq, kernel_kq_radial_derivative, CanonicalPotential, Genus,
    HarmonicPolynomial,
};
use balayage_core::trend::dyadic_grid;
use balayage_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xba1a_9e00 + criterion)
}

fn log_uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (r.gen_range(lo.ln()..hi.ln())).exp()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn closed_form_vs_oracle() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let z = c(r.gen_range(-100.0..100.0), log_uniform(&mut r, 0.01, 100.0));
        let a = r.gen_range(-100.0..100.0);
        let b = a + log_uniform(&mut r, 1e-3, 200.0);
        let iv = ok(Interval::new(a, b), "interval")?;
        let exact = ok(hm_interval(z, iv), "closed form")?;
        let quad = ok(hm_interval_quad(z, iv), "quadrature")?;
        worst = worst.max((exact - quad).abs());
        ensure!((exact - quad).abs() <= 1e-8, "z={z} I=[{a},{b}]: {exact} vs {quad}");
    }
    let mut semi: f64 = 0.0;
    for _ in 0..1000 {
        let (m, h) = (r.gen_range(-50.0..50.0), log_uniform(&mut r, 0.01, 50.0));
        let z = c(m, 0.0) + Complex64::from_polar(h, r.gen_range(0.01..PI - 0.01));
        let v = ok(hm_interval(z, ok(Interval::new(m - h, m + h), "interval")?), "closed form")?;
        semi = semi.max((v - 0.5).abs());
        ensure!((v - 0.5).abs() <= 1e-10, "semicircle z={z}: {v}");
    }
    Ok(format!("max |closed − quad| = {worst:.1e}, max |ω − 1/2| on semicircles = {semi:.1e}"))
}

fn bound_dominance() -> Outcome {
    let mut r = rng(2);
    let mut applied = 0;
    for _ in 0..10_000 {
        let z = c(r.gen_range(-20.0..20.0), log_uniform(&mut r, 0.01, 50.0));
        let t1 = r.gen_range(-20.0..20.0);
        let t2 = t1 + log_uniform(&mut r, 1e-3, 40.0);
        let a = r.gen_range(0.05..0.95);
        let rep = ok(hm_bounds(z, ok(Interval::new(t1, t2), "interval")?, a), "interval bounds")?;
        applied += rep.entries.len();
        if let Some(v) = rep.violations().next() {
            return Err(format!("z={z} I=[{t1},{t2}] a={a}: {v:?} vs exact {}", rep.exact));
        }
        let alpha = r.gen_range(-PI..PI);
        let sec = ok(Sector::new(alpha, alpha + r.gen_range(0.2..2.0 * PI)), "sector")?;
        let w = Complex64::from_polar(log_uniform(&mut r, 0.01, 50.0), alpha + r.gen_range(0.01..0.99) * sec.aperture());
        let rad = log_uniform(&mut r, 0.01, 50.0);
        for rep in [
            ok(sector_disk_bound(&sec, w, rad, a), "sector disk bound")?,
            ok(sector_exterior_bound(&sec, w, rad, a), "sector exterior bound")?,
        ] {
            applied += rep.entries.len();
            if let Some(v) = rep.violations().next() {
                return Err(format!("sector {sec:?} z={w} r={rad}: {v:?} vs exact {}", rep.exact));
            }
        }
    }
    Ok(format!("{applied} bound evaluations, 0 violations"))
}

fn balayage_exactness() -> Outcome {
    let s = RaySystem::real_axis();
    let point = balayage_system(&ok(AtomicCharge::point(c(0.0, 2.0), 1.0), "charge")?, &s);
    let f = ok(point.distribution_on_real(2.0), "distribution")?;
    ensure!((f - 0.25).abs() <= 1e-15, "(ν^bal)(2) = {f}");
    let dipole = AtomicCharge::new(vec![ok(Atom::new(c(0.0, 1.0), 1.0), "atom")?, ok(Atom::new(c(0.0, -1.0), -1.0), "atom")?]);
    let bal = balayage_system(&dipole, &s);
    let var = balayage_system(&dipole.variation(), &s);
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let t = 0.25 + 0.75 * k as f64;
        for (j, x) in [(0, t), (1, -t)] {
            ensure!(bal.ray_density(j, t).abs() <= 1e-12, "signed density at {x}");
            ensure!(ok(bal.distribution_on_real(x), "distribution")?.abs() <= 1e-12, "signed distribution at {x}");
            let want = 2.0 / (PI * (1.0 + t * t));
            let got = var.ray_density(j, t);
            worst = worst.max((got - want).abs());
            ensure!((got - want).abs() <= 1e-12, "|ν|^bal density at {x}: {got} vs {want}");
        }
    }
    Ok(format!("F(2) = {f}, max density error {worst:.1e}"))
}

fn random_charge(r: &mut ChaCha8Rng, n: usize, radius: f64, positive: bool) -> AtomicCharge {
    let atoms = (0..n)
        .map(|_| {
            let z = Complex64::from_polar(radius * r.gen::<f64>().sqrt(), r.gen_range(0.0..2.0 * PI));
            let m = if positive || r.gen_bool(0.5) { 1.0 } else { -1.0 } * r.gen_range(0.1..3.0);
            Atom::new(z, m).unwrap()
        })
        .collect();
    AtomicCharge::new(atoms)
}

fn mass_conservation() -> Outcome {
    let mut r = rng(4);
    let systems = [
        vec![0.3],
        vec![0.0, PI],
        vec![0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0],
        vec![0.0, PI / 2.0, PI, 3.0 * PI / 2.0],
        vec![0.1, 0.9, 2.0, 3.5, 5.0],
    ];
    let mut worst: f64 = 0.0;
    for th in &systems {
        let s = ok(RaySystem::new(th), "system")?;
        for _ in 0..100 {
            let n = r.gen_range(1..=50);
            let nu = random_charge(&mut r, n, 10.0, true);
            let d = (balayage_system(&nu, &s).total_mass() - nu.total_mass()).abs();
            worst = worst.max(d);
            ensure!(d <= 1e-10, "system {th:?}: defect {d}");
        }
    }
    Ok(format!("500 cases, max defect {worst:.1e}"))
}

fn fubini() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let k = r.gen_range(1..=5);
        let mut th: Vec<f64> = (0..k).map(|_| r.gen_range(0.0..2.0 * PI)).collect();
        th.sort_by(f64::total_cmp);
        let s = match RaySystem::new(&th) {
            Ok(s) => s,
            Err(_) => RaySystem::real_axis(),
        };
        let n = r.gen_range(1..=8);
        let nu = random_charge(&mut r, n, 5.0, false);
        let w = r.gen_range(0.2..2.0);
        let f = ok(
            TestFunction::hat(r.gen_range(0..s.len()), w + r.gen_range(0.0..4.0), w, r.gen_range(0.5..2.0)),
            "hat",
        )?;
        let rep = ok(check_fubini(&nu, &s, &f), "fubini")?;
        let d = (rep.lhs - rep.rhs).abs();
        worst = worst.max(d);
        ensure!(d <= 1e-8, "{rep:?}");
    }
    Ok(format!("50 triples, max |lhs − rhs| = {worst:.1e}"))
}

fn carleman() -> Outcome {
    let mut r = rng(6);
    let none = HarmonicPolynomial::default();
    let one = ok(AtomicCharge::point(c(0.0, 2.0), 1.0), "charge")?;
    let rep = ok(carleman_check(&one, &none, 1.0, 10.0), "carleman")?;
    ensure!((rep.lhs - 0.48).abs() <= 1e-12 && rep.residual <= 1e-6, "log|z − 2i|: {rep:?}");
    let mut worst: f64 = rep.residual;
    let mut cases = 0;
    while cases < 70 {
        let n = if cases < 50 { 1 } else { r.gen_range(2..=6) };
        let atoms: Vec<Atom> = (0..n)
            .map(|_| {
                let z = Complex64::from_polar(log_uniform(&mut r, 0.1, 30.0), r.gen_range(0.02..PI - 0.02));
                Atom::new(z, r.gen_range(0.1..2.0)).unwrap()
            })
            .collect();
        let clear = |t: f64| [1.0, 8.0, 32.0].iter().all(|&s| (t - s).abs() > 0.05);
        if !atoms.iter().all(|a| clear(a.z.norm()) && a.z.im > 0.05) {
            continue;
        }
        let nu = AtomicCharge::new(atoms);
        for rr in [8.0, 32.0] {
            let rep = ok(carleman_check(&nu, &none, 1.0, rr), "carleman")?;
            worst = worst.max(rep.residual);
            ensure!(rep.residual <= 1e-6, "r={rr} {nu:?}: {rep:?}");
        }
        cases += 1;
    }
    Ok(format!("lhs(log|z − 2i|, r = 10) = {:.12}, 70 charges, max residual {worst:.1e}", rep.lhs))
}

fn swept_bounds() -> Outcome {
    let mut r = rng(7);
    let cross = ok(RaySystem::new(&[0.0, PI / 2.0, PI, 3.0 * PI / 2.0]), "system")?;
    for _ in 0..100 {
        let n = r.gen_range(1..=20);
        let nu = random_charge(&mut r, n, 10.0, false);
        let t1 = log_uniform(&mut r, 0.05, 10.0);
        let t2 = t1 + log_uniform(&mut r, 0.01, 10.0);
        let (t1, t2) = if r.gen_bool(0.5) { (t1, t2) } else { (-t2, -t1) };
        let chk = ok(check_thcup_bound(&nu, t1, t2, r.gen_range(0.05..0.95)), "thcup")?;
        ensure!(chk.holds, "thcup [{t1},{t2}]: {chk:?}");
    }
    for _ in 0..100 {
        let n = r.gen_range(1..=20);
        let nu = random_charge(&mut r, n, 10.0, false);
        let rad = log_uniform(&mut r, 0.1, 10.0);
        let g = rad * r.gen_range(1.05..4.0);
        let target = if r.gen_bool(0.5) { GrowthTarget::HalfPlane } else { GrowthTarget::RealAxis };
        let chk = ok(check_ges_bound(&nu, target, g, rad), "ges")?;
        ensure!(chk.holds, "ges r={rad} g={g}: {chk:?}");
    }
    for _ in 0..100 {
        let n = r.gen_range(1..=20);
        let nu = random_charge(&mut r, n, 10.0, false);
        let rad = log_uniform(&mut r, 0.1, 10.0);
        let g = rad * r.gen_range(1.05..4.0);
        let chk = ok(check_system_growth_bound(&nu, &cross, g, rad), "system growth")?;
        ensure!(chk.holds, "system growth r={rad} g={g}: {chk:?}");
    }
    // separated sequence on the ray arg z = π/3 with unit density: p = 1
    let z0 = Complex64::from_polar(1.0, PI / 3.0);
    let nu = AtomicCharge::from_fn(4000, |k| Atom::unit(z0 * (k as f64 + 1.0)).unwrap());
    let lip = ok(check_lipschitz(&nu, 1.0, 2.0), "lipschitz")?;
    ensure!(lip.modulus.is_finite() && lip.modulus <= lip.tail_constant, "{lip:?}");
    let fit = ok(lipschitz_form_fit(&nu, 1.0, 4.0, 500.0), "lipschitz form")?;
    ensure!(fit.holds && fit.fitted_b.is_finite(), "{fit:?}");
    Ok(format!("300 bound cases hold; Lipschitz modulus {:.4}, fitted b = {:.4}, slope {:.3}", lip.modulus, fit.fitted_b, fit.slope))
}

fn kernel_identities() -> Outcome {
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 200 {
        let z = Complex64::from_polar(log_uniform(&mut r, 0.05, 20.0), r.gen_range(-PI..PI));
        let t = log_uniform(&mut r, 0.05, 20.0);
        let q = r.gen_range(0..=3);
        if (z - t).norm() < 0.05 * t {
            continue;
        }
        let h = 1e-5 * t;
        let fd = (ok(kernel_kq(c(t + h, 0.0), z, q), "kernel")? - ok(kernel_kq(c(t - h, 0.0), z, q), "kernel")?) / (2.0 * h);
        let d = ok(kernel_kq_radial_derivative(z, t, q), "derivative")?;
        let e = (fd - d).abs() / d.abs().max(1.0);
        worst = worst.max(e);
        ensure!(e <= 1e-6, "q={q} z={z} t={t}: {fd} vs {d}");
        done += 1;
    }
    for _ in 0..200 {
        let n = r.gen_range(1..40);
        let jumps: Vec<(f64, f64)> = (0..n).map(|_| (r.gen_range(0.0..1e3), r.gen_range(0.01..5.0))).collect();
        let f = ok(StepFunction::from_jumps(0.0, jumps), "step")?;
        let p = if r.gen_bool(0.3) { 0.0 } else { r.gen_range(0.0..3.0) };
        let rad = r.gen_range(0.5..5.0);
        let inf = ok(parts_identity_inf(&f, p, rad, rad * r.gen_range(1.5..500.0)), "parts ∞")?;
        let zero = ok(parts_identity_zero(&f, p, rad), "parts 0")?;
        ensure!(inf.holds(1e-12) && zero.holds(1e-12), "{inf:?} {zero:?}");
    }
    let nu = AtomicCharge::new(vec![
        ok(Atom::new(c(0.0, 2.0), 1.0), "atom")?,
        ok(Atom::new(c(1.0, 3.0), 0.5), "atom")?,
        ok(Atom::new(c(0.5, -1.0), 1.0), "atom")?,
    ]);
    let pot = ok(CanonicalPotential::new(nu, Genus::Fixed(-1)), "potential")?;
    let mut worst_a: f64 = 0.0;
    for (alpha, beta) in [(0.0, PI), (0.2, 1.5), (-1.0, 2.5)] {
        for rr in [4.0, 20.0] {
            let f = ok(class_a_functionals(&pot, alpha, beta, 1.0, rr), "class A")?;
            let d = (f.a - f.a_from_j).abs().max((f.a - f.a_from_double).abs());
            worst_a = worst_a.max(d);
            ensure!(d <= 1e-6, "({alpha}, {beta}) r={rr}: {f:?}");
        }
    }
    Ok(format!("FD max rel error {worst:.1e}; parts identities exact; class-A max defect {worst_a:.1e}"))
}

fn lindelof_preservation() -> Outcome {
    let mut r = rng(9);
    let radii = dyadic_grid(4.0, 256.0, 1);
    let mut worst: f64 = 0.0;
    for fam in 0..20 {
        // conjugation-symmetric, unit density near the real axis plus a
        // geometric sequence off it: finite 1-type, Blaschke outside ℝ
        let n = r.gen_range(256..1024);
        let phi = r.gen_range(0.05..PI - 0.05);
        let mut atoms = Vec::with_capacity(2 * n + 40);
        for k in 1..=n {
            let x = if r.gen_bool(0.5) { 1.0 } else { -1.0 } * (k as f64 + r.gen_range(0.0..0.5));
            let z = c(x, r.gen_range(0.1..3.0));
            let m = r.gen_range(0.5..2.0);
            atoms.push(ok(Atom::new(z, m), "atom")?);
            atoms.push(ok(Atom::new(z.conj(), m), "atom")?);
        }
        for k in 1..=10 {
            let z = Complex64::from_polar(2f64.powi(k) * r.gen_range(1.0..1.5), phi);
            atoms.push(ok(Atom::unit(z), "atom")?);
            atoms.push(ok(Atom::unit(z.conj()), "atom")?);
        }
        let nu = AtomicCharge::new(atoms);
        let s = if fam % 2 == 0 {
            RaySystem::real_axis()
        } else {
            ok(RaySystem::new(&[0.0, PI / 2.0, PI, 3.0 * PI / 2.0]), "system")?
        };
        let rep = ok(check_lindelof_preservation(&nu, &s, 1, 1.0, &radii), "lindelof")?;
        worst = worst.max(rep.slope);
        ensure!(rep.bounded, "family {fam}: constant {} slope {}", rep.fitted_constant, rep.slope);
    }
    Ok(format!("20 families bounded, max log-slope {worst:.3}"))
}

fn sine_zeros(n: usize) -> AtomicCharge {
    AtomicCharge::from_points((1..=n).flat_map(|k| {
        let t = k as f64 * PI;
        [c(t, 0.0), c(-t, 0.0)]
    }))
    .unwrap()
}

fn crg_diagnostics() -> Outcome {
    let s = RaySystem::real_axis();
    let counts = |keep: &dyn Fn(usize) -> bool| {
        let jumps: Vec<(f64, f64)> = (1..=1usize << 16).filter(|&k| keep(k)).map(|k| (k as f64, 1.0)).collect();
        let f = StepFunction::new(0.0, jumps).unwrap();
        vec![f.clone(), f]
    };
    let ap = ok(crg_on_rays(&s, &counts(&|_| true), 1.0, &CrgConfig::default()), "crg")?;
    ensure!(ap.regular && ap.exceptional_density <= 0.05, "progression: regular={} δ={}", ap.regular, ap.exceptional_density);
    let block = |k: usize| (k as f64) < 2.0 * 4f64.powf((k as f64).log(4.0).floor());
    let irr = ok(crg_on_rays(&s, &counts(&block), 1.0, &CrgConfig::default()), "crg")?;
    ensure!(!irr.regular, "block charge not flagged");
    let n = 10_000;
    let zeros = sine_zeros(n);
    let radii = dyadic_grid(256.0, 4096.0, 4);
    let dens = ok(angular_density(&zeros, 0.0, 2.0 * PI, 1.0, &radii, 0.02), "angular density")?;
    ensure!((dens.fit.limit - 2.0 / PI).abs() <= 0.02, "density {:?}", dens.fit);
    let pot = ok(CanonicalPotential::new(zeros, Genus::Fixed(1)), "potential")?;
    let ind = ok(indicator_estimate(&pot, PI / 2.0, 1.0, 10.0, n as f64 * PI / 4.0), "indicator")?;
    ensure!((ind.value - 1.0).abs() <= 0.05, "indicator {}", ind.value);
    Ok(format!(
        "progression δ = {:.3}; block charge flagged; density {:.4} (2/π = {:.4}); indicator {:.4}",
        ap.exceptional_density,
        dens.fit.limit,
        2.0 / PI,
        ind.value
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("closed form vs oracle", 10, closed_form_vs_oracle),
        ("bound dominance", 20, bound_dominance),
        ("balayage exactness", 1, balayage_exactness),
        ("mass conservation", 10, mass_conservation),
        ("Fubini equality", 30, fubini),
        ("Carleman identity", 60, carleman),
        ("swept-charge bounds", 30, swept_bounds),
        ("kernel identities", 10, kernel_identities),
        ("Lindelöf preservation", 20, lindelof_preservation),
        ("CRG diagnostics", 60, crg_diagnostics),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > Duration::from_secs(*budget) => Err(format!("{msg}; over the {budget} s budget")),
            other => other,
        };
        match res {
            Ok(msg) => println!("PASS {:>2} {name} ({:.2} s): {msg}", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2} s): {msg}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
