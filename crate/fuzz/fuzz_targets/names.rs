#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot::io::parse_param_name;
use qdot::model::{convert_units, DotParams, Unit};

fuzz_target!(|input: (&str, &str, f64, f64)| {
    let (name, unit, value, delta_mev) = input;
    if let Ok(n) = parse_param_name(name) {
        let p = DotParams::default();
        assert!(p.with(n, 0.5).is_some());
        assert_eq!(p.with(n, 0.5).unwrap().get(n), Some(0.5));
    }
    if let Ok(u) = unit.parse::<Unit>() {
        assert_eq!(u.to_string().parse::<Unit>(), Ok(u));
        if let Ok(v) = convert_units(value, u, Unit::Delta, delta_mev) {
            // Keep every intermediate product inside the normal f64 range.
            let normal = |x: f64| (1e-100..1e100).contains(&x.abs());
            if normal(value) && normal(delta_mev) {
                let back = convert_units(v, Unit::Delta, u, delta_mev).unwrap();
                assert!((back - value).abs() <= 1e-9 * value.abs().max(1e-300));
            }
        }
    }
});
