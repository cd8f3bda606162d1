//! Command drivers. Every input is read and validated before any
//! computation, and files are written only once the whole report exists.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use balayage_core::balayage::{
    balayage_halfplane, balayage_system, check_fubini, check_ges_bound, check_lindelof_preservation, check_lipschitz,
    check_system_growth_bound, check_thcup_bound, lipschitz_form_fit, BalayageCharge, GrowthTarget, TestFunction,
};
use balayage_core::charges::AtomicCharge;
use balayage_core::growth_scales::{convergence_integral_zero, growth_report};
use balayage_core::harmonic_measure::{
    hm_bounds, hm_interval, hm_interval_quad, hm_sector_disk, hm_sector_exterior, hm_system, sector_disk_bound,
    sector_exterior_bound, BoundReport, BoundarySegment, BoundarySet, Interval,
};
use balayage_core::ray_geometry::{classify_point, reduce_to_halfplane, Location, RaySystem, Sector};
use balayage_core::regular_growth::{crg_on_rays, exgr2_functionals, ray_counting_functions, CrgConfig, CrgReport};
use balayage_core::step::StepFunction;
use balayage_core::subharmonic::{
    carleman_check, circle_mean, class_a_functionals, mean_inequality, potential_eval, CanonicalPotential, Genus,
    GenusSchedule, HarmonicPolynomial,
};
use balayage_core::trend::Trend;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{BalayageArgs, Check, Cli, Command, CrgArgs, GrowthArgs, HmArgs, PotentialArgs, PotentialCmd, Target};
use crate::error::CliError;
use crate::output::{self, flatten, num, Pending, Table};

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced: the main document, an optional table for CSV
/// output, extra files, and whether the examined statement held.
struct Outcome {
    json: Value,
    table: Option<Table>,
    extra: Vec<Pending>,
    passed: bool,
}

impl Outcome {
    fn tabled(json: Value, table: Option<Table>) -> Self {
        Outcome {
            json,
            table,
            extra: Vec::new(),
            passed: true,
        }
    }
}

/// Runs the command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol {t} must be positive")));
        }
    }
    let out = match &cli.command {
        Command::Hm(a) => cmd_hm(a)?,
        Command::Balayage(a) => cmd_balayage(a, cli)?,
        Command::Check(c) => cmd_check(c, cli)?,
        Command::Growth(a) => cmd_growth(a)?,
        Command::Potential(a) => cmd_potential(a)?,
        Command::Crg(a) => {
            let (json, table, _) = crg(a, cli)?;
            Outcome::tabled(json, Some(table))
        }
    };
    let main = if cli.csv {
        out.table.unwrap_or_else(|| flatten(&out.json)).to_csv()
    } else {
        output::to_json(&out.json)
    };
    let mut files = vec![Pending {
        path: cli.out.clone(),
        contents: main,
    }];
    files.extend(out.extra);
    output::commit(files).map_err(CliError::Write)?;
    Ok(out.passed)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cjson(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("--{name} {x} must be positive")))
    }
}

fn bound_table(rep: &BoundReport) -> Table {
    let mut t = Table::new(&["name", "kind", "value", "exact", "holds"]);
    for e in &rep.entries {
        let kind = to_value(&e.kind).as_str().unwrap_or_default().to_string();
        t.push(vec![e.name.into(), kind, num(e.value), num(rep.exact), e.holds.to_string()]);
    }
    t
}

/// `ω(w, [−ρ, ρ])` with `ρ = r^{π/γ}`: the disk part of a sector boundary
/// after the power map, by quadrature of the Poisson kernel.
fn sector_disk_oracle(sec: &Sector, z: Complex64, r: f64) -> Result<f64> {
    let w = reduce_to_halfplane(sec, z)?;
    let rho = r.powf(sec.exponent());
    Ok(hm_interval_quad(w, Interval::new(-rho, rho)?)?)
}

fn cmd_hm(a: &HmArgs) -> Result<Outcome> {
    let z = a.z;
    let (exact, oracle, bounds) = if let Some((t1, t2)) = a.interval {
        let iv = Interval::new(t1, t2)?;
        let exact = hm_interval(z, iv)?;
        let bounds = hm_bounds(z, iv, a.a)?;
        (exact, Some(hm_interval_quad(z, iv)?), Some(bounds))
    } else if let Some((alpha, beta)) = a.sector {
        let sec = Sector::new(alpha, beta)?;
        match (a.disk.as_slice(), a.exterior) {
            ([r], None) => {
                let r = positive("disk", *r)?;
                let exact = hm_sector_disk(&sec, z, r)?;
                (exact, Some(sector_disk_oracle(&sec, z, r)?), Some(sector_disk_bound(&sec, z, r, a.a)?))
            }
            ([], Some(r)) => {
                let r = positive("exterior", r)?;
                let exact = hm_sector_exterior(&sec, z, r)?;
                let oracle = 1.0 - sector_disk_oracle(&sec, z, r)?;
                (exact, Some(oracle), Some(sector_exterior_bound(&sec, z, r, a.a)?))
            }
            _ => return Err(CliError::Usage("a sector needs exactly one of --disk r or --exterior r".into())),
        }
    } else if let Some(path) = &a.system {
        let s: RaySystem = read_json(path)?;
        let mut set: BoundarySet = match &a.boundary {
            Some(p) => read_json(p)?,
            None => BoundarySet::default(),
        };
        for &(j, lo, hi) in &a.segment {
            set.segments.push(BoundarySegment::new(j, lo, hi)?);
        }
        set.disks.extend(&a.disk);
        if set.segments.is_empty() && set.disks.is_empty() {
            return Err(CliError::Usage("empty boundary set: give --disk, --segment or --boundary".into()));
        }
        let exact = hm_system(&s, z, &set)?;
        let (oracle, bounds) = match classify_point(&s, z) {
            Location::InSector { sector, .. } if set.segments.is_empty() => {
                let r = set.disks.iter().copied().fold(0.0, f64::max);
                (Some(sector_disk_oracle(&sector, z, r)?), Some(sector_disk_bound(&sector, z, r, a.a)?))
            }
            _ => (None, None),
        };
        (exact, oracle, bounds)
    } else {
        return Err(CliError::Usage("give --interval, --sector or --system".into()));
    };
    let table = bounds.as_ref().map(bound_table);
    let json = json!({
        "z": cjson(z),
        "exact": exact,
        "oracle": oracle,
        "oracle_difference": oracle.map(|o| (o - exact).abs()),
        "bounds": bounds,
    });
    Ok(Outcome::tabled(json, table))
}

fn sample_table(bal: &BalayageCharge, t_max: f64, points: usize, nonempty: bool) -> Table {
    let s = bal.rays();
    let radii: Vec<f64> = if nonempty {
        (1..=points).map(|k| k as f64 * t_max / points as f64).collect()
    } else {
        Vec::new()
    };
    let on_axis = bal.distribution_on_real(0.0).is_ok();
    if on_axis {
        let mut t = Table::new(&["x", "distribution", "density"]);
        let neg = s.ray_index(PI).expect("real axis has the ray π");
        let pos = s.ray_index(0.0).expect("real axis has the ray 0");
        let xs = radii.iter().rev().map(|&r| (-r, neg, r)).chain(radii.iter().map(|&r| (r, pos, r)));
        for (x, j, r) in xs {
            let f = bal.distribution_on_real(x).expect("checked above");
            t.push(vec![num(x), num(f), num(bal.ray_density(j, r))]);
        }
        t
    } else {
        let mut t = Table::new(&["ray", "theta", "t", "distribution", "density"]);
        for j in 0..s.len() {
            for &r in &radii {
                t.push(vec![
                    j.to_string(),
                    num(s.thetas()[j]),
                    num(r),
                    num(bal.ray_distribution(j, r)),
                    num(bal.ray_density(j, r)),
                ]);
            }
        }
        t
    }
}

fn cmd_balayage(a: &BalayageArgs, cli: &Cli) -> Result<Outcome> {
    positive("t-max", a.t_max)?;
    if a.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let nu: AtomicCharge = read_json(&a.charge)?;
    let bal = if a.upper_only {
        balayage_halfplane(&nu)
    } else {
        let s = match &a.system {
            Some(p) => read_json(p)?,
            None => RaySystem::real_axis(),
        };
        balayage_system(&nu, &s)
    };
    let table = sample_table(&bal, a.t_max, a.points, !nu.is_empty());
    let samples = a
        .samples
        .clone()
        .or_else(|| cli.out.as_ref().filter(|_| !cli.csv).map(|p| p.with_extension("csv")));
    let extra = samples
        .into_iter()
        .map(|p| Pending {
            path: Some(p),
            contents: table.to_csv(),
        })
        .collect();
    Ok(Outcome {
        json: to_value(&bal),
        table: Some(table),
        extra,
        passed: true,
    })
}

fn potential(a: &PotentialArgs) -> Result<CanonicalPotential> {
    let nu: AtomicCharge = read_json(&a.charge.charge)?;
    let genus = match (a.genus, &a.schedule) {
        (Some(q), None) => Genus::Fixed(q),
        (None, Some(p)) => Genus::Schedule(read_json::<GenusSchedule>(p)?),
        _ => return Err(CliError::Usage("give one of --genus q or --schedule file".into())),
    };
    let mut pot = CanonicalPotential::new(nu, genus)?;
    if let Some(p) = &a.harmonic {
        pot = pot.with_harmonic(read_json::<HarmonicPolynomial>(p)?);
    }
    Ok(pot)
}

fn cmd_potential(a: &PotentialCmd) -> Result<Outcome> {
    if a.z.is_empty() && a.circle.is_empty() {
        return Err(CliError::Usage("give at least one --z or --circle".into()));
    }
    for &r in &a.circle {
        positive("circle", r)?;
    }
    let pot = potential(&a.potential)?;
    let mut table = Table::new(&["re", "im", "value"]);
    let mut values = Vec::new();
    for &z in &a.z {
        let v = potential_eval(&pot, z);
        table.push(vec![num(z.re), num(z.im), num(v.to_f64())]);
        values.push(json!({"z": cjson(z), "value": v}));
    }
    let means = a
        .circle
        .iter()
        .map(|&r| Ok(json!({"r": r, "mean": circle_mean(&pot, r, 64)?})))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::tabled(json!({"values": values, "circle_means": means}), Some(table)))
}

fn cmd_growth(a: &GrowthArgs) -> Result<Outcome> {
    let f: StepFunction = match (&a.step, &a.charge) {
        (Some(p), _) => read_json(p)?,
        (None, Some(p)) => read_json::<AtomicCharge>(p)?.radial_counting(a.variation),
        (None, None) => return Err(CliError::Usage("give --step or --charge".into())),
    };
    let rep = growth_report(&f, a.p, a.lo, a.hi)?;
    let zero = a.zero_r0.map(|r0| convergence_integral_zero(&f, a.p, r0)).transpose()?;
    let mut table = Table::new(&["r", "integral"]);
    for &(r, v) in &rep.convergence.trace {
        table.push(vec![num(r), num(v)]);
    }
    Ok(Outcome::tabled(json!({"growth": rep, "zero": zero}), Some(table)))
}

fn crg(a: &CrgArgs, cli: &Cli) -> Result<(Value, Table, CrgReport)> {
    let cfg = CrgConfig {
        r_lo: a.r_lo,
        r_hi: a.r_hi,
        per_octave: a.per_octave,
        tol: cli.tol.unwrap_or(CrgConfig::default().tol),
        drop: a.drop,
    };
    let s: RaySystem = read_json(&a.system)?;
    let n: Vec<StepFunction> = match (&a.counting, &a.charge) {
        (Some(p), _) => read_json(p)?,
        (None, Some(p)) => {
            let nu: AtomicCharge = read_json(p)?;
            let t_max = positive("t-max", a.t_max.unwrap_or(64.0 * a.r_hi))?;
            ray_counting_functions(&balayage_system(&nu, &s), t_max, a.sample_per_octave.max(1))?
        }
        (None, None) => return Err(CliError::Usage("give --counting or --charge".into())),
    };
    let rep = crg_on_rays(&s, &n, a.p, &cfg)?;
    let mut table = Table::new(&["ray", "theta", "r", "value", "density"]);
    for ray in &rep.rays {
        for (v, d) in ray.trace.iter().zip(&ray.density_trace) {
            table.push(vec![ray.ray_index.to_string(), num(ray.theta), num(v.0), num(v.1), num(d.1)]);
        }
    }
    Ok((to_value(&rep), table, rep))
}

fn verdict(name: &str, holds: bool, report: Value) -> Outcome {
    Outcome {
        json: json!({"check": name, "holds": holds, "report": report}),
        table: None,
        extra: Vec::new(),
        passed: holds,
    }
}

fn hm_bounds_sweep(samples: usize, seed: u64) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut applied = 0usize;
    let mut violations = Vec::new();
    for _ in 0..samples {
        let z = Complex64::new(rng.gen_range(-100.0..100.0), 10f64.powf(rng.gen_range(-2.0..2.0)));
        let c = rng.gen_range(-100.0..100.0);
        let l = 10f64.powf(rng.gen_range(-2.0..2.0));
        let a = rng.gen_range(0.05..0.95);
        let rep = hm_bounds(z, Interval::new(c - l, c + l)?, a)?;
        applied += rep.entries.len();
        for e in rep.violations() {
            violations.push(json!({"z": cjson(z), "interval": [c - l, c + l], "a": a, "bound": e, "exact": rep.exact}));
        }
    }
    Ok(json!({"samples": samples, "seed": seed, "bounds_applied": applied, "violations": violations}))
}

fn cmd_check(c: &Check, cli: &Cli) -> Result<Outcome> {
    let charge = |p: &PathBuf| read_json::<AtomicCharge>(p);
    Ok(match c {
        Check::Blaschke { charge: ch, system, r0 } => {
            let r0 = positive("r0", *r0)?;
            let nu = charge(&ch.charge)?;
            match system {
                Some(p) => {
                    let s: RaySystem = read_json(p)?;
                    let rep = nu.blaschke_outside_system(&s, r0);
                    verdict("blaschke", rep.finite, to_value(&rep))
                }
                None => {
                    let tr = nu.blaschke_trend(r0);
                    let holds = tr.verdict == Trend::Bounded;
                    verdict("blaschke", holds, json!({"sum": nu.blaschke_halfplane(r0), "trend": tr}))
                }
            }
        }
        Check::Lindelof { charge: ch, q, r0 } => {
            let r0 = positive("r0", *r0)?;
            let tr = charge(&ch.charge)?.lindelof_trend(*q, r0);
            verdict("lindelof", tr.verdict == Trend::Bounded, to_value(&tr))
        }
        Check::Thcup { charge: ch, t1, t2, a } => {
            let rep = check_thcup_bound(&charge(&ch.charge)?, *t1, *t2, *a)?;
            verdict("thcup", rep.holds, to_value(&rep))
        }
        Check::Ges { charge: ch, target, g, r } => {
            let target = match target {
                Target::HalfPlane => GrowthTarget::HalfPlane,
                Target::RealAxis => GrowthTarget::RealAxis,
            };
            let rep = check_ges_bound(&charge(&ch.charge)?, target, *g, *r)?;
            verdict("ges", rep.holds, to_value(&rep))
        }
        Check::SystemGrowth { charge: ch, system, g, r } => {
            let nu = charge(&ch.charge)?;
            let s: RaySystem = read_json(system)?;
            let rep = check_system_growth_bound(&nu, &s, *g, *r)?;
            verdict("system-growth", rep.holds, to_value(&rep))
        }
        Check::Lipschitz { charge: ch, x1, x2 } => {
            let rep = check_lipschitz(&charge(&ch.charge)?, *x1, *x2)?;
            let holds = rep.modulus <= rep.tail_constant * (1.0 + 1e-9);
            verdict("lipschitz", holds, to_value(&rep))
        }
        Check::LipschitzFit { charge: ch, p, r0, r_max } => {
            let rep = lipschitz_form_fit(&charge(&ch.charge)?, *p, *r0, *r_max)?;
            verdict("lipschitz-fit", rep.holds, to_value(&rep))
        }
        Check::Fubini {
            charge: ch,
            system,
            test_function,
        } => {
            let nu = charge(&ch.charge)?;
            let s: RaySystem = read_json(system)?;
            let f: TestFunction = read_json(test_function)?;
            let rep = check_fubini(&nu, &s, &f)?;
            let tol = cli.tol.unwrap_or(1e-8);
            let holds = (rep.lhs - rep.rhs).abs() <= tol;
            verdict("fubini", holds, to_value(&rep))
        }
        Check::LindelofPreservation {
            charge: ch,
            system,
            p,
            r0,
            radii,
        } => {
            let nu = charge(&ch.charge)?;
            let s: RaySystem = read_json(system)?;
            let rep = check_lindelof_preservation(&nu, &s, *p, *r0, radii)?;
            verdict("lindelof-preservation", rep.bounded, to_value(&rep))
        }
        Check::Carleman { charge: ch, harmonic, r0, r } => {
            let nu = charge(&ch.charge)?;
            let h: HarmonicPolynomial = match harmonic {
                Some(p) => read_json(p)?,
                None => HarmonicPolynomial::default(),
            };
            let rep = carleman_check(&nu, &h, *r0, *r)?;
            let holds = rep.residual <= cli.tol.unwrap_or(1e-6);
            verdict("carleman", holds, to_value(&rep))
        }
        Check::ClassA {
            potential: pa,
            alpha,
            beta,
            r0,
            r,
        } => {
            let pot = potential(pa)?;
            let rep = class_a_functionals(&pot, *alpha, *beta, *r0, *r)?;
            verdict("class-a", rep.identities_hold, to_value(&rep))
        }
        Check::Mean { potential: pa, r0, r } => {
            let pot = potential(pa)?;
            let rep = mean_inequality(&pot, *r0, *r)?;
            verdict("mean", rep.holds, to_value(&rep))
        }
        Check::Crg(a) => {
            let (json, table, rep) = crg(a, cli)?;
            let mut out = verdict("crg", rep.regular, json);
            out.table = Some(table);
            out
        }
        Check::Exgr2 { counting, ts, radii } => {
            let n: Vec<StepFunction> = read_json(counting)?;
            let Ok(n) = <[StepFunction; 4]>::try_from(n) else {
                return Err(CliError::Usage("exgr2 needs exactly four counting functions".into()));
            };
            let mut breaks: Vec<f64> = n.iter().flat_map(|f| f.jumps().iter().map(|j| j.0)).collect();
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
            let f: Vec<Box<dyn Fn(f64) -> f64 + '_>> =
                n.iter().map(|g| Box::new(move |t: f64| g.eval(t)) as Box<dyn Fn(f64) -> f64>).collect();
            let fs: [&dyn Fn(f64) -> f64; 4] = [&*f[0], &*f[1], &*f[2], &*f[3]];
            let rep = exgr2_functionals(fs, &breaks, ts, radii, cli.tol.unwrap_or(0.05))?;
            let holds = rep.l_fit_re.stable && rep.l_fit_im.stable;
            verdict("exgr2", holds, to_value(&rep))
        }
        Check::HmBounds { samples } => {
            let rep = hm_bounds_sweep(*samples, cli.seed)?;
            let holds = rep["violations"].as_array().is_some_and(|v| v.is_empty());
            verdict("hm-bounds", holds, rep)
        }
    })
}
