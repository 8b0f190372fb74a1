//! `key = value` configuration files and small command-line value grammars.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::PARAM_NAMES;
use crate::susceptibility::linear_grid;

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored;
/// a repeated key is an error.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(Error::parse(line_no, "empty key"));
        }
        if key.chars().any(char::is_whitespace) {
            return Err(Error::parse(line_no, format!("key '{key}' contains whitespace")));
        }
        if value.is_empty() {
            return Err(Error::parse(line_no, format!("empty value for '{key}'")));
        }
        if out.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::parse(line_no, format!("duplicate key '{key}'")));
        }
    }
    Ok(out)
}

/// A finite number, rejecting `inf`/`nan` spellings.
pub fn parse_number(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(1, format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(1, format!("'{s}' is not finite")));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        linear_grid(self.start, self.stop, self.points)
    }
}

pub const MAX_RANGE_POINTS: usize = 1_000_000;

/// `start:stop:n` with start < stop and 2 ≤ n.
pub fn parse_range(s: &str) -> Result<RangeSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::parse(1, format!("range '{s}' is not start:stop:n")));
    }
    let start = parse_number(parts[0])?;
    let stop = parse_number(parts[1])?;
    let points: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::parse(1, format!("'{}' is not a point count", parts[2])))?;
    if !(2..=MAX_RANGE_POINTS).contains(&points) {
        return Err(Error::parse(1, format!("range needs 2..={MAX_RANGE_POINTS} points")));
    }
    if !(start < stop) {
        return Err(Error::parse(1, "range needs start < stop"));
    }
    Ok(RangeSpec {
        start,
        stop,
        points,
    })
}

/// Canonical name of a sweepable parameter.
pub fn parse_param_name(s: &str) -> Result<&'static str> {
    let s = s.trim();
    if s == "temperature" {
        return Ok("temp");
    }
    PARAM_NAMES
        .iter()
        .copied()
        .find(|&n| n == s)
        .ok_or_else(|| {
            Error::parse(
                1,
                format!("unknown parameter '{s}' (expected one of {})", PARAM_NAMES.join(", ")),
            )
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let text = "# comment\n\ndelta = 1.0\njz=0.1 # trailing\n  temp =  20 \n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c["jz"], "0.1");
        assert_eq!(c["temp"], "20");
    }

    #[test]
    fn config_errors_carry_line_numbers() {
        let err = parse_config("a = 1\na = 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_config("novalue\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_config("= 3").is_err());
        assert!(parse_config("k =").is_err());
        assert!(parse_config("a b = 3").is_err());
    }

    #[test]
    fn ranges() {
        let r = parse_range("5:40:8").unwrap();
        assert_eq!(r.values().len(), 8);
        assert_eq!(r.values()[7], 40.0);
        for bad in ["1:2", "2:1:5", "1:2:1", "a:2:3", "1:2:x", "1:inf:3", "1:2:3:4"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn param_names() {
        assert_eq!(parse_param_name("temperature").unwrap(), "temp");
        assert_eq!(parse_param_name("jperp").unwrap(), "jperp");
        assert!(parse_param_name("omega").is_err());
        assert!(parse_number("nan").is_err());
    }
}
