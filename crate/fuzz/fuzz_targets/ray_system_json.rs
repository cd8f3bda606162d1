#![no_main]

use balayage_core::ray_geometry::{classify_point, complementary_sectors, RaySystem};
use balayage_core::Complex64;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = serde_json::from_slice::<RaySystem>(data) else {
        return;
    };
    let _ = classify_point(&s, Complex64::new(0.3, 0.7));
    for sec in complementary_sectors(&s) {
        assert!(sec.aperture() > 0.0);
    }
    let out = serde_json::to_string(&s).unwrap();
    serde_json::from_str::<RaySystem>(&out).unwrap();
});
