#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot::io::{comb_from_json, comb_to_csv, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = comb_from_json(text) {
        let out = to_json(&doc).unwrap();
        let back = comb_from_json(&out).unwrap();
        assert_eq!(to_json(&back).unwrap(), out);
        let _ = comb_to_csv(&doc);
    }
});
