#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot::io::parse_range;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_range(text) {
        assert!(r.start < r.stop);
        assert!(r.points >= 2);
        // Avoid allocating the largest grids on every run.
        if r.points <= 4096 {
            let v = r.values();
            assert_eq!(v.len(), r.points);
            assert_eq!(v[0], r.start);
            assert_eq!(*v.last().unwrap(), r.stop);
        }
    }
});
