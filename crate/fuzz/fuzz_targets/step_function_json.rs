#![no_main]

use balayage_core::growth_scales::convergence_integral_zero;
use balayage_core::step::StepFunction;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(f) = serde_json::from_slice::<StepFunction>(data) else {
        return;
    };
    let _ = f.eval(1.0);
    let _ = f.eval_left(1.0);
    let _ = f.pieces(0.0, 10.0);
    let _ = convergence_integral_zero(&f, 1.0, 1.0);
    let out = serde_json::to_string(&f).unwrap();
    serde_json::from_str::<StepFunction>(&out).unwrap();
});
