#![no_main]

use bdcover::rootdata::{validate, RootDatum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(rd) = RootDatum::from_json_str(s) {
        if validate(&rd).is_ok() {
            let again = RootDatum::from_json(&rd.to_json()).expect("serialized data parse");
            assert_eq!(again, rd);
        }
    }
});
