//! CSV and JSON documents for curves, sweeps and combs.
//!
//! Every document carries the full parameter set and the regime report.
//! JSON keys appear in the order params, regime, data; CSV numbers are
//! written with 17 significant digits so they parse back bit-exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DotParams, RegimeReport};
use crate::susceptibility::Peak;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesData {
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombData {
    pub peaks: Vec<Peak>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document<D> {
    pub params: DotParams,
    pub regime: RegimeReport,
    pub data: D,
}

pub type SeriesDocument = Document<SeriesData>;
pub type CombDocument = Document<CombData>;

/// Shortest scientific form with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn series_from_json(text: &str) -> Result<SeriesDocument> {
    let doc: SeriesDocument = serde_json::from_str(text)?;
    if doc.data.x.len() != doc.data.y.len() {
        return Err(Error::parse(
            1,
            format!("x has {} values but y has {}", doc.data.x.len(), doc.data.y.len()),
        ));
    }
    Ok(doc)
}

pub fn comb_from_json(text: &str) -> Result<CombDocument> {
    Ok(serde_json::from_str(text)?)
}

fn header(params: &DotParams, regime: &RegimeReport, meta: &BTreeMap<String, String>) -> String {
    let mut s = String::new();
    let p = params;
    for (k, v) in [
        ("delta", p.delta),
        ("jz", p.jz),
        ("jperp", p.jperp),
        ("ec", p.ec),
        ("n0", p.n0),
        ("mu", p.mu),
        ("temp", p.temperature),
    ] {
        let _ = writeln!(s, "# {k} = {}", fmt17(v));
    }
    let _ = writeln!(s, "# phase = {:?}", regime.phase);
    let _ = writeln!(s, "# high_t_ising_valid = {}", regime.high_t_ising_valid);
    let _ = writeln!(s, "# high_t_aniso_valid = {}", regime.high_t_aniso_valid);
    let _ = writeln!(s, "# low_t_valid = {}", regime.low_t_valid);
    for note in &regime.notes {
        let _ = writeln!(s, "# warning = {note}");
    }
    for (k, v) in meta {
        let _ = writeln!(s, "# {k} = {v}");
    }
    s
}

pub fn series_to_csv(doc: &SeriesDocument) -> String {
    let mut s = header(&doc.params, &doc.regime, &doc.data.meta);
    let _ = writeln!(s, "{},{}", doc.data.x_label, doc.data.y_label);
    for (x, y) in doc.data.x.iter().zip(&doc.data.y) {
        let _ = writeln!(s, "{},{}", fmt17(*x), fmt17(*y));
    }
    s
}

pub fn comb_to_csv(doc: &CombDocument) -> String {
    let mut meta = doc.data.meta.clone();
    for (i, note) in doc.data.notes.iter().enumerate() {
        meta.insert(format!("note_{i}"), note.clone());
    }
    let mut s = header(&doc.params, &doc.regime, &meta);
    s.push_str("omega,weight\n");
    for p in &doc.data.peaks {
        let _ = writeln!(s, "{},{}", fmt17(p.omega), fmt17(p.weight));
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Reads the CSV layout written above: `# key = value` lines, one column
/// header, then numeric rows of the same width.
pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut metadata = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(rest) = line.strip_prefix('#') {
            if columns.is_some() {
                return Err(Error::parse(line_no, "metadata after the column header"));
            }
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "metadata line without '='"))?;
            metadata.push((k.trim().to_string(), v.trim().to_string()));
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match &columns {
            None => {
                let cols: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
                if cols.iter().any(String::is_empty) {
                    return Err(Error::parse(line_no, "empty column name"));
                }
                columns = Some(cols);
            }
            Some(cols) => {
                let row = line
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::parse(line_no, format!("'{c}' is not a number")))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                if row.len() != cols.len() {
                    return Err(Error::parse(
                        line_no,
                        format!("expected {} fields, found {}", cols.len(), row.len()),
                    ));
                }
                rows.push(row);
            }
        }
    }
    let columns = columns.ok_or_else(|| Error::parse(1, "missing column header"))?;
    Ok(CsvTable {
        metadata,
        columns,
        rows,
    })
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, contents).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
