#![no_main]

use balayage_core::harmonic_measure::{hm_system, BoundarySet};
use balayage_core::ray_geometry::RaySystem;
use balayage_core::Complex64;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(set) = serde_json::from_slice::<BoundarySet>(data) {
        let s = RaySystem::real_axis();
        if let Ok(w) = hm_system(&s, Complex64::new(0.5, 1.5), &set) {
            assert!((-1e-9..=1.0 + 1e-9).contains(&w), "{w}");
        }
    }
});
