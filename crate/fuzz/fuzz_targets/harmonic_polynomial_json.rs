#![no_main]

use balayage_core::subharmonic::HarmonicPolynomial;
use balayage_core::Complex64;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(h) = serde_json::from_slice::<HarmonicPolynomial>(data) {
        let _ = h.eval(Complex64::new(1.0, 1.0));
    }
});
