//! Set files: UTF-8 text, one `num` or `num/den` per line. `#` starts a
//! comment, blank lines are skipped, and a repeated value is an error.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use sqsum_core::Rational;

#[derive(Debug, thiserror::Error)]
pub enum SetFileError {
    #[error("line {line}: cannot parse {text:?}: {source}")]
    Parse {
        line: usize,
        text: String,
        source: sqsum_core::Error,
    },
    #[error("line {line}: duplicate element {value} (first on line {first})")]
    Duplicate {
        line: usize,
        first: usize,
        value: Rational,
    },
    #[error("set file contains no elements")]
    Empty,
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub fn parse_set(text: &str) -> Result<BTreeSet<Rational>, SetFileError> {
    let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let value: Rational = body.parse().map_err(|source| SetFileError::Parse {
            line,
            text: body.to_string(),
            source,
        })?;
        match seen.entry(value) {
            Entry::Occupied(e) => {
                return Err(SetFileError::Duplicate {
                    line,
                    first: *e.get(),
                    value: e.key().clone(),
                })
            }
            Entry::Vacant(e) => {
                e.insert(line);
            }
        }
    }
    if seen.is_empty() {
        return Err(SetFileError::Empty);
    }
    Ok(seen.into_keys().collect())
}

pub fn read_set_file(path: &Path) -> Result<BTreeSet<Rational>, SetFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| SetFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_set(&text)
}

/// Renders values in set-file format under an optional comment header.
pub fn render_set<'a, I, T>(header: Option<&str>, values: I) -> String
where
    I: IntoIterator<Item = &'a T>,
    T: std::fmt::Display + 'a,
{
    let mut out = String::new();
    if let Some(h) = header {
        for l in h.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    for v in values {
        let _ = writeln!(out, "{v}");
    }
    out
}
