use super::*;
use crate::balayage::balayage_system;
use crate::subharmonic::{CanonicalPotential, Genus};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_step(t: f64) -> StepFunction {
    StepFunction::new(0.0, vec![(t, 1.0)]).unwrap()
}

fn sine_zeros(n: usize) -> AtomicCharge {
    AtomicCharge::from_points((1..=n).flat_map(|k| {
        let t = k as f64 * PI;
        [c(t, 0.0), c(-t, 0.0)]
    }))
    .unwrap()
}

/// Symmetric integer atoms `±k`, `k ≤ n`, as counting functions on ℝ⁺ and ℝ⁻.
fn progression_counts(n: usize, keep: impl Fn(usize) -> bool) -> Vec<StepFunction> {
    let jumps: Vec<(f64, f64)> = (1..=n).filter(|&k| keep(k)).map(|k| (k as f64, 1.0)).collect();
    let f = StepFunction::new(0.0, jumps).unwrap();
    vec![f.clone(), f]
}

#[test]
fn indicator_trivial_cases() {
    let abs = |z: Complex64| z.norm();
    let e = indicator_estimate(&abs, 0.7, 1.0, 1.0, 1e3).unwrap();
    assert!((e.value - 1.0).abs() < 1e-12);
    let pos = |z: Complex64| z.re.max(0.0);
    assert!((indicator_estimate(&pos, 0.0, 1.0, 1.0, 1e3).unwrap().value - 1.0).abs() < 1e-12);
    assert!(indicator_estimate(&pos, PI / 2.0, 1.0, 1.0, 1e3).unwrap().value.abs() < 1e-12);
    assert!(indicator_estimate(&pos, 0.0, 0.0, 1.0, 1e3).is_err());
}

#[test]
fn indicator_of_sine_product() {
    let n = 10_000;
    let p = CanonicalPotential::new(sine_zeros(n), Genus::Fixed(1)).unwrap();
    let e = indicator_estimate(&p, PI / 2.0, 1.0, 10.0, n as f64 * PI / 4.0).unwrap();
    assert!((e.value - 1.0).abs() < 0.05, "{}", e.value);
    let real = indicator_estimate(&p, 0.0, 1.0, 10.5, 1000.0).unwrap();
    assert!(real.value < 0.05, "{}", real.value);
}

#[test]
fn pv_examples() {
    let zero = StepFunction::zero();
    assert_eq!(pv_kernel_integral(&zero, 0, c(0.0, 2.0), 0.1).unwrap().value, 0.0);
    assert_eq!(pv_kernel_integral(&zero, 1, c(3.0, 0.0), 0.1).unwrap().value, 0.0);

    let n = unit_step(1.0);
    let off = pv_kernel_integral(&n, 0, c(0.0, 2.0), 0.1).unwrap();
    assert!(!off.principal_value);
    assert!((off.value - 5f64.sqrt().ln()).abs() < 1e-10, "{off:?}");
    assert!((pv_kernel_stieltjes(&n, 0, c(0.0, 2.0)).unwrap() - 0.804_718_956_217_050_2).abs() < 1e-12);

    // K_0(1, 2) = log|1 − 2| = 0 and K_1(1, 2) = 0 + 2.
    let on = pv_kernel_integral(&n, 0, c(2.0, 0.0), 0.1).unwrap();
    assert!(on.principal_value);
    assert!(on.value.abs() < 1e-8, "{on:?}");
    let on1 = pv_kernel_integral(&n, 1, c(2.0, 0.0), 0.1).unwrap();
    assert!((on1.value - 2.0).abs() < 1e-8, "{on1:?}");
}

#[test]
fn pv_errors() {
    let n = unit_step(1.0);
    assert_eq!(pv_kernel_integral(&n, 0, c(1.0, 0.0), 0.1), Err(Error::Singularity(1.0)));
    let bad = StepFunction::new(1.0, vec![]).unwrap();
    assert!(matches!(pv_kernel_integral(&bad, 0, c(0.0, 1.0), 0.1), Err(Error::HypothesisViolated(_))));
    assert!(pv_kernel_integral(&n, 0, c(2.0, 0.0), 0.0).is_err());
}

#[test]
fn pv_excision_differences_shrink() {
    let n = StepFunction::new(0.0, vec![(0.5, 1.0), (1.5, 2.0), (4.0, -0.5)]).unwrap();
    for q in 0..3 {
        let e = pv_kernel_integral(&n, q, c(2.5, 0.0), 0.4).unwrap();
        let d: Vec<f64> = e.excised.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "q={q}: {d:?}");
        let want = pv_kernel_stieltjes(&n, q, c(2.5, 0.0)).unwrap();
        assert!((e.value - want).abs() <= 1e-6 * want.abs().max(1.0), "q={q}: {} vs {want}", e.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pv_matches_stieltjes_off_axis(
        t in 0.1f64..20.0,
        s in -3.0f64..3.0,
        q in 0u32..4,
        r in 0.1f64..30.0,
        phi in 0.05f64..(2.0 * PI - 0.05),
    ) {
        let n = StepFunction::new(0.0, vec![(t, s)]).unwrap();
        let z = Complex64::from_polar(r, phi);
        let quad = pv_kernel_integral(&n, q, z, 0.1).unwrap().value;
        let exact = pv_kernel_stieltjes(&n, q, z).unwrap();
        prop_assert!((quad - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", quad, exact);
    }

    #[test]
    fn pv_matches_stieltjes_on_axis(
        t in 0.1f64..20.0,
        s in -3.0f64..3.0,
        q in 0u32..3,
        x in 0.1f64..30.0,
    ) {
        prop_assume!((x - t).abs() > 1e-3);
        let n = StepFunction::new(0.0, vec![(t, s)]).unwrap();
        let pv = pv_kernel_integral(&n, q, c(x, 0.0), 0.5).unwrap().value;
        let exact = pv_kernel_stieltjes(&n, q, c(x, 0.0)).unwrap();
        prop_assert!((pv - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", pv, exact);
    }
}

#[test]
fn crg_arithmetic_progression_is_regular() {
    let s = RaySystem::real_axis();
    let n = progression_counts(1 << 16, |_| true);
    let rep = crg_on_rays(&s, &n, 1.0, &CrgConfig::default()).unwrap();
    assert!(rep.regular, "{:?}", rep.rays.iter().map(|r| &r.fit).collect::<Vec<_>>());
    assert!(rep.exceptional_density <= 0.05);
    for ray in &rep.rays {
        assert!(ray.fit.limit.abs() < 0.05, "{:?}", ray.fit);
        assert!(ray.density_fit.stable && (ray.density_fit.limit - 1.0).abs() < 0.01);
    }
    assert_eq!(rep.q, 1);
    assert_eq!(rep.lindelof_bounded, Some(true));
}

#[test]
fn crg_block_charge_is_flagged() {
    // Integers in [4^m, 2·4^m) only: the counting function oscillates on a
    // logarithmic scale.
    let in_block = |k: usize| {
        let m = (k as f64).log(4.0).floor();
        (k as f64) < 2.0 * 4f64.powf(m)
    };
    let s = RaySystem::real_axis();
    let n = progression_counts(1 << 16, in_block);
    let rep = crg_on_rays(&s, &n, 1.0, &CrgConfig::default()).unwrap();
    assert!(!rep.regular);
    assert!(!rep.rays[0].fit.stable);
    assert!(!rep.rays[0].density_fit.stable);
}

#[test]
fn crg_is_linear_in_the_charge() {
    let s = RaySystem::new(&[0.0, 2.0, 4.0]).unwrap();
    let n: Vec<StepFunction> = (0..3)
        .map(|j| StepFunction::new(0.0, (1..=3000).map(|k| (k as f64 * (1.0 + 0.1 * j as f64), 1.0)).collect()).unwrap())
        .collect();
    let cfg = CrgConfig {
        r_lo: 16.0,
        r_hi: 128.0,
        ..CrgConfig::default()
    };
    let a = crg_on_rays(&s, &n, 1.0, &cfg).unwrap();
    let scaled: Vec<StepFunction> = n.iter().map(|f| f.scaled(2.5)).collect();
    let b = crg_on_rays(&s, &scaled, 1.0, &cfg).unwrap();
    for (ra, rb) in a.rays.iter().zip(&b.rays) {
        for (x, y) in ra.trace.iter().zip(&rb.trace) {
            assert_eq!(x.0, y.0);
            assert!((y.1 - 2.5 * x.1).abs() <= 1e-12 * x.1.abs().max(1.0));
        }
    }
}

#[test]
fn crg_half_order_square_atoms() {
    let s = RaySystem::real_axis();
    let n = vec![
        StepFunction::new(0.0, (1..=2000).map(|k| ((k * k) as f64, 1.0)).collect()).unwrap(),
        StepFunction::zero(),
    ];
    let rep = crg_on_rays(&s, &n, 0.5, &CrgConfig::default()).unwrap();
    assert_eq!(rep.q, 0);
    assert!(rep.lindelof_trace.is_none());
    let d = &rep.rays[0].density_fit;
    assert!(d.stable && (d.limit - 1.0).abs() < 0.1, "{d:?}");
}

#[test]
fn crg_input_checks() {
    let s = RaySystem::real_axis();
    let n = progression_counts(10, |_| true);
    assert!(crg_on_rays(&s, &n[..1], 1.0, &CrgConfig::default()).is_err());
    let cfg = CrgConfig {
        r_lo: 0.5,
        ..CrgConfig::default()
    };
    assert!(crg_on_rays(&s, &n, 1.0, &cfg).is_err());
    assert!(crg_on_rays(&s, &n, 0.0, &CrgConfig::default()).is_err());
}

#[test]
fn counting_functions_from_balayage() {
    let s = RaySystem::real_axis();
    let kept = balayage_system(&sine_zeros(5), &s);
    let n = ray_counting_functions(&kept, 100.0, 4).unwrap();
    assert_eq!(n[0].eval(3.0 * PI + 0.1), 3.0);
    assert_eq!(n[1].eval(100.0), 5.0);

    let swept = balayage_system(&AtomicCharge::point(c(0.0, 2.0), 1.0).unwrap(), &s);
    let n = ray_counting_functions(&swept, 1e4, 64).unwrap();
    for t in [0.5f64, 2.0, 30.0] {
        let want = (t / 2.0).atan() / PI;
        assert!((n[0].eval(t) - want).abs() < 0.01, "{t}");
    }
}

#[test]
fn exgr2_examples() {
    let zero = |_: f64| 0.0;
    let b = exgr2_b([&zero, &zero, &zero, &zero], &[], 10.0).unwrap();
    assert_eq!(b, [0.0; 4]);

    let lin = |s: f64| s;
    let rep = exgr2_functionals([&lin, &lin, &lin, &lin], &[], &[10.0, 100.0, 1000.0], &[4.0, 16.0, 64.0], 1e-6).unwrap();
    for (t, bk) in &rep.b {
        for v in bk {
            let want = 2f64.sqrt() * PI / t.sqrt();
            assert!((v - want).abs() < 1e-8 * want, "t={t}: {v} vs {want}");
        }
    }
    assert!(rep.l_trace.iter().all(|(_, l)| l.norm() < 1e-12));
    assert!(rep.l_fit_re.stable && rep.l_fit_im.stable);
}

#[test]
fn exgr2_asymmetric_counts() {
    // Zeros on the first bisector only: b_0 = b_3 and b_1 = b_2 = 0, so
    // L(r) = ∫_1^r (b_0 + i b_0)/(2t) dt.
    let step = StepFunction::new(0.0, (1..=200).map(|k| (k as f64, 1.0)).collect()).unwrap();
    let n0 = |s: f64| step.eval(s);
    let zero = |_: f64| 0.0;
    let breaks: Vec<f64> = (1..=200).map(|k| k as f64).collect();
    let b = exgr2_b([&n0, &zero, &zero, &zero], &breaks, 50.0).unwrap();
    assert!(b[1] == 0.0 && b[2] == 0.0);
    assert!((b[0] - b[3]).abs() < 1e-12);
    // Closed form: 2 Σ_k (π/2 − atan(k²/t)) / (2t).
    let exact: f64 = (1..=200).map(|k| (PI / 2.0 - ((k * k) as f64 / 50.0).atan()) / 50.0).sum();
    assert!((b[0] - exact).abs() < 1e-9, "{} vs {exact}", b[0]);
    let rep = exgr2_functionals([&n0, &zero, &zero, &zero], &breaks, &[], &[2.0], 1e-6).unwrap();
    let l = rep.l_trace[0].1;
    assert!((l.re - l.im).abs() < 1e-9 && l.re > 0.0);
}

#[test]
fn angular_density_examples() {
    let n = 5000;
    let on_ray = AtomicCharge::from_points((1..=n).map(|k| c(k as f64, 0.0))).unwrap();
    let radii = dyadic_grid(256.0, 4096.0, 4);
    let d = angular_density(&on_ray, -0.1, 0.1, 1.0, &radii, 0.01).unwrap();
    assert!(d.fit.stable && (d.fit.limit - 1.0).abs() < 1e-2);
    let miss = angular_density(&on_ray, 0.5, 3.0, 1.0, &radii, 0.01).unwrap();
    assert_eq!(miss.fit.limit, 0.0);
    let sine = angular_density(&sine_zeros(n), 0.0, 2.0 * PI, 1.0, &radii, 0.02).unwrap();
    assert!((sine.fit.limit - 2.0 / PI).abs() < 0.02, "{:?}", sine.fit);
    // Symmetric zeros: the order-1 sums vanish.
    let l = sine.lindelof_trace.unwrap();
    assert!(l.iter().all(|(_, s)| s.norm() < 1e-12));
    assert!(angular_density(&sine_zeros(3), 0.0, 2.0 * PI, 0.5, &radii, 0.02).unwrap().lindelof_trace.is_none());
    assert!(angular_density(&on_ray, 1.0, 0.5, 1.0, &radii, 0.01).is_err());
}
