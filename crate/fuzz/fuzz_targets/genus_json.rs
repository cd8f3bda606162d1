#![no_main]

use balayage_core::subharmonic::Genus;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = serde_json::from_slice::<Genus>(data) {
        for t in [0.0, 0.5, 1.0, 1e3, f64::MAX] {
            let _ = g.at(t);
        }
    }
});
