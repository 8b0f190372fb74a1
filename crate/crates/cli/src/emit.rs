use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::args::Format;
use crate::{is_energy, Failure, Run, Units};
use qdot::io::{comb_to_csv, fmt17, series_to_csv, to_json, write_output, CombDocument, SeriesDocument};
use qdot::sweep::Output;
use qdot::Unit;

#[derive(Serialize)]
#[serde(untagged)]
enum DocRef<'a> {
    Series(&'a SeriesDocument),
    Comb(&'a CombDocument),
}

/// Rewrites energy axes into the requested unit and records it.
fn localize(o: &Output, units: Units) -> Output {
    let mut o = o.clone();
    if units.unit == Unit::Delta {
        return o;
    }
    let tag = |meta: &mut std::collections::BTreeMap<String, String>| {
        meta.insert("unit".into(), units.unit.to_string());
        meta.insert("delta_mev".into(), fmt17(units.delta_mev));
    };
    match &mut o {
        Output::Series { doc, .. } => {
            if is_energy(&doc.data.x_label) {
                for x in &mut doc.data.x {
                    *x = units.from_delta(*x);
                }
            }
            tag(&mut doc.data.meta);
        }
        Output::Comb { doc, .. } => {
            for p in &mut doc.data.peaks {
                p.omega = units.from_delta(p.omega);
            }
            tag(&mut doc.data.meta);
        }
    }
    o
}

fn render(o: &Output, format: Format) -> Run<String> {
    Ok(match (o, format) {
        (Output::Series { doc, .. }, Format::Csv) => series_to_csv(doc),
        (Output::Comb { doc, .. }, Format::Csv) => comb_to_csv(doc),
        (Output::Series { doc, .. }, Format::Json) => to_json(doc)?,
        (Output::Comb { doc, .. }, Format::Json) => to_json(doc)?,
    })
}

fn sibling(path: &Path, name: &str, format: Format) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "qdot".into());
    path.with_file_name(format!("{stem}_{name}.{}", format.extension()))
}

/// Writes documents to stdout, to one file, or to one file per document.
///
/// With `dir` set, `out` is a directory holding `<name>.<ext>` files.
/// Otherwise several documents land next to `out` as `<stem>_<name>.<ext>`.
/// On stdout CSV blocks are separated by a blank line and JSON documents are
/// wrapped in an array.
pub fn emit(outputs: &[Output], units: Units, format: Format, out: Option<&Path>, dir: bool) -> Run {
    let outputs: Vec<Output> = outputs.iter().map(|o| localize(o, units)).collect();
    match out {
        None if outputs.len() == 1 => write_output(None, &render(&outputs[0], format)?)?,
        None => {
            let text = match format {
                Format::Csv => outputs
                    .iter()
                    .map(|o| render(o, format))
                    .collect::<Run<Vec<_>>>()?
                    .join("\n"),
                Format::Json => {
                    let docs: Vec<DocRef> = outputs
                        .iter()
                        .map(|o| match o {
                            Output::Series { doc, .. } => DocRef::Series(doc),
                            Output::Comb { doc, .. } => DocRef::Comb(doc),
                        })
                        .collect();
                    to_json(&docs)?
                }
            };
            write_output(None, &text)?;
        }
        Some(dir_path) if dir => {
            std::fs::create_dir_all(dir_path)
                .map_err(|e| Failure::Numerical(format!("{}: {e}", dir_path.display())))?;
            for o in &outputs {
                let path = dir_path.join(format!("{}.{}", o.name(), format.extension()));
                write_output(Some(&path), &render(o, format)?)?;
            }
        }
        Some(path) if outputs.len() == 1 => write_output(Some(path), &render(&outputs[0], format)?)?,
        Some(path) => {
            for o in &outputs {
                write_output(Some(&sibling(path, o.name(), format)), &render(o, format)?)?;
            }
        }
    }
    Ok(())
}
