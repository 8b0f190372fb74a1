#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot::io::{series_from_json, series_to_csv, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = series_from_json(text) {
        assert_eq!(doc.data.x.len(), doc.data.y.len());
        let out = to_json(&doc).unwrap();
        let back = series_from_json(&out).unwrap();
        assert_eq!(to_json(&back).unwrap(), out);
        let _ = series_to_csv(&doc);
    }
});
