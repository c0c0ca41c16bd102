#![no_main]

use bdcover::parse::{parse_int, parse_rational, parse_rational_vector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(s) {
        let again = parse_rational(&q.to_string()).expect("printed rationals parse");
        assert_eq!(q, again);
    }
    let _ = parse_int(s);
    let _ = parse_rational_vector(s);
});
