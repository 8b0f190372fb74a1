use std::collections::BTreeMap;

use proptest::prelude::*;

use qdot::io::{
    comb_from_json, comb_to_csv, parse_config, parse_csv, parse_range, series_from_json,
    series_to_csv, to_json, CombData, Document, SeriesData,
};
use qdot::model::{classify_regime, DotParams};
use qdot::susceptibility::Peak;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        -1e3f64..1e3,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
    ]
}

fn dot_params() -> impl Strategy<Value = DotParams> {
    (finite(), finite(), finite(), finite(), finite(), finite(), finite()).prop_map(
        |(delta, jz, jperp, ec, n0, mu, temperature)| DotParams {
            delta,
            jz,
            jperp,
            ec,
            n0,
            mu,
            temperature,
        },
    )
}

proptest! {
    #[test]
    fn series_json_is_lossless(p in dot_params(), xy in prop::collection::vec((finite(), finite()), 0..30)) {
        let doc = Document {
            params: p,
            regime: classify_regime(&p),
            data: SeriesData {
                x_label: "omega".into(),
                y_label: "im_chi".into(),
                x: xy.iter().map(|v| v.0).collect(),
                y: xy.iter().map(|v| v.1).collect(),
                meta: BTreeMap::from([("model".to_string(), "ising".to_string())]),
            },
        };
        let text = to_json(&doc).unwrap();
        let back = series_from_json(&text).unwrap();
        for (a, b) in back.data.y.iter().zip(&doc.data.y) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn comb_json_and_csv_are_lossless(p in dot_params(), peaks in prop::collection::vec((finite(), finite()), 0..20)) {
        let doc = Document {
            params: p,
            regime: classify_regime(&p),
            data: CombData {
                peaks: peaks.iter().map(|&(omega, weight)| Peak { omega, weight }).collect(),
                notes: vec!["S = 1".into()],
                meta: BTreeMap::new(),
            },
        };
        let back = comb_from_json(&to_json(&doc).unwrap()).unwrap();
        prop_assert_eq!(back.data.peaks.len(), doc.data.peaks.len());
        for (a, b) in back.data.peaks.iter().zip(&doc.data.peaks) {
            prop_assert_eq!(a.omega.to_bits(), b.omega.to_bits());
            prop_assert_eq!(a.weight.to_bits(), b.weight.to_bits());
        }
        let table = parse_csv(&comb_to_csv(&doc)).unwrap();
        prop_assert_eq!(table.rows.len(), doc.data.peaks.len());
        for (row, b) in table.rows.iter().zip(&doc.data.peaks) {
            prop_assert_eq!(row[0].to_bits(), b.omega.to_bits());
            prop_assert_eq!(row[1].to_bits(), b.weight.to_bits());
        }
    }

    #[test]
    fn csv_metadata_reproduces_params(p in dot_params()) {
        let doc = Document {
            params: p,
            regime: classify_regime(&p),
            data: SeriesData {
                x_label: "temp".into(),
                y_label: "qfi".into(),
                x: vec![1.0],
                y: vec![2.0],
                meta: BTreeMap::new(),
            },
        };
        let t = parse_csv(&series_to_csv(&doc)).unwrap();
        let get = |k: &str| -> f64 {
            t.metadata.iter().find(|(key, _)| key == k).unwrap().1.parse().unwrap()
        };
        prop_assert_eq!(get("jz").to_bits(), p.jz.to_bits());
        prop_assert_eq!(get("temp").to_bits(), p.temperature.to_bits());
        prop_assert_eq!(get("mu").to_bits(), p.mu.to_bits());
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,200}") {
        let _ = parse_config(&s);
        let _ = parse_range(&s);
        let _ = parse_csv(&s);
        let _ = series_from_json(&s);
        let _ = comb_from_json(&s);
    }

    #[test]
    fn config_round_trip(entries in prop::collection::btree_map("[a-z_]{1,8}", "[0-9.]{1,8}", 0..8)) {
        let text: String = entries.iter().map(|(k, v)| format!("{k} = {v}  # note\n")).collect();
        prop_assert_eq!(parse_config(&text).unwrap(), entries);
    }
}
