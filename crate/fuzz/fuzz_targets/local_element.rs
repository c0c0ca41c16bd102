#![no_main]

use bdcover::localarith::hilbert2;
use bdcover::parse::{parse_local_element, parse_place};
use libfuzzer_sys::fuzz_target;

// Input: `place|element|element`, e.g. `2|3/5|-7`.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut parts = s.splitn(3, '|');
    let (Some(p), Some(a), Some(b)) = (parts.next(), parts.next(), parts.next()) else { return };
    let Ok(place) = parse_place(p) else { return };
    let (Ok(u), Ok(v)) = (parse_local_element(place, a), parse_local_element(place, b)) else { return };
    if let (Ok(x), Ok(y)) = (hilbert2(&u, &v), hilbert2(&v, &u)) {
        assert_eq!(x, y);
        assert!(x == 1 || x == -1);
    }
});
