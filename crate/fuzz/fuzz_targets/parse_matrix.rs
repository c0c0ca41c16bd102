#![no_main]

use bdcover::parse::{parse_matrix, parse_vector, parse_vector_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(m) = parse_matrix(s) {
        let text: Vec<String> = m
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        assert_eq!(parse_matrix(&text.join(";")).expect("printed matrices parse"), m);
    }
    let _ = parse_vector(s);
    let _ = parse_vector_json(s);
});
