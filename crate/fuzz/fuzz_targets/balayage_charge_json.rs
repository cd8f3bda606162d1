#![no_main]

use balayage_core::balayage::BalayageCharge;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(bal) = serde_json::from_slice::<BalayageCharge>(data) {
        let _ = bal.total_mass();
        let _ = bal.radial(1.0);
        for j in 0..bal.rays().len() {
            let _ = bal.ray_distribution(j, 1.0);
        }
    }
});
