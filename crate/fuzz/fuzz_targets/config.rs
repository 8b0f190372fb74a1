#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot::io::{parse_config, parse_number, parse_param_name};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_config(text) {
        for (k, v) in &entries {
            assert!(!k.is_empty() && !v.is_empty());
            assert!(!k.contains('#') && !v.contains('#'));
            if parse_param_name(k).is_ok() {
                if let Ok(x) = parse_number(v) {
                    assert!(x.is_finite());
                }
            }
        }
        // Re-serializing the parsed map must parse back to the same map.
        let again: String = entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        assert_eq!(parse_config(&again).unwrap(), entries);
    }
});
