//! Configuration parsing and document formats used by the command line.

pub mod config;
pub mod format;

pub use config::{parse_config, parse_number, parse_param_name, parse_range, RangeSpec};
pub use format::{
    comb_from_json, comb_to_csv, fmt17, parse_csv, series_from_json, series_to_csv, to_json,
    write_output, CombData, CombDocument, CsvTable, Document, SeriesData, SeriesDocument,
};
