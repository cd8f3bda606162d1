#![no_main]

use balayage_core::balayage::TestFunction;
use balayage_core::ray_geometry::RaySystem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(f) = serde_json::from_slice::<TestFunction>(data) {
        let s = RaySystem::real_axis();
        if f.validate(&s).is_ok() {
            let _ = f.eval_on_ray(0, 1.0);
            let _ = f.eval_on_ray(1, 1.0);
        }
    }
});
