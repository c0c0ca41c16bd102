#![no_main]

use bdcover::rootdata::{build_from_label, validate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(rd) = build_from_label(s) {
        assert!(validate(&rd).is_ok());
    }
});
