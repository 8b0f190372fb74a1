//! Replays the checked-in fuzz seeds through the parsers.

use std::path::{Path, PathBuf};

use qdot::io::{
    comb_from_json, parse_config, parse_csv, parse_range, series_from_json, to_json,
};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("seed_"))
        .map(|p| {
            let text = String::from_utf8_lossy(&std::fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn config_seeds() {
    let results: Vec<bool> = seeds("config").iter().map(|(_, t)| parse_config(t).is_ok()).collect();
    assert!(results.contains(&true) && results.contains(&false));
}

#[test]
fn range_seeds() {
    for (path, text) in seeds("range") {
        if let Ok(r) = parse_range(&text) {
            assert!(r.start < r.stop, "{}", path.display());
        }
    }
}

#[test]
fn json_seeds_round_trip() {
    for (path, text) in seeds("series_json") {
        let doc = series_from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(to_json(&doc).unwrap(), text, "{}", path.display());
    }
    for (path, text) in seeds("comb_json") {
        let doc = comb_from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(to_json(&doc).unwrap(), text, "{}", path.display());
    }
}

#[test]
fn csv_seeds() {
    for (path, text) in seeds("csv") {
        if let Ok(t) = parse_csv(&text) {
            assert!(t.rows.iter().all(|r| r.len() == t.columns.len()), "{}", path.display());
        }
    }
}
