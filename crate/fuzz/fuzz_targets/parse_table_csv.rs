#![no_main]

use bdcover::parse::parse_table_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_table_csv(s) {
        for (_, cells) in &t.rows {
            assert_eq!(cells.len(), t.groups.len());
        }
    }
});
