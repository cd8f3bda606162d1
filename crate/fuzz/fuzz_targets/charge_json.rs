#![no_main]

use balayage_core::balayage::balayage_halfplane;
use balayage_core::charges::AtomicCharge;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(nu) = serde_json::from_slice::<AtomicCharge>(data) {
        let bal = balayage_halfplane(&nu);
        let _ = bal.total_mass();
        let _ = nu.radial_counting(true);
        let s = serde_json::to_string(&nu).unwrap();
        serde_json::from_str::<AtomicCharge>(&s).unwrap();
    }
});
