#![no_main]

use balayage_cli::parse::{parse_complex, parse_list, parse_pair, parse_segment};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(z) = parse_complex(s) {
        assert!(z.re.is_finite() && z.im.is_finite());
    }
    let _ = parse_pair(s);
    if let Ok(v) = parse_list(s) {
        assert!(v.iter().all(|x| x.is_finite()));
    }
    let _ = parse_segment(s);
});
