//! CSV and JSON renderings of search results and GAP hits.

use serde::{Deserialize, Serialize};
use sqsum_core::constructions::GapHit;
use sqsum_core::zp::{SearchResult, TableRow};

pub const SEARCH_CSV_HEADER: &str = "n,p,minimum,witness,nodes,exact";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

/// One `(n, p)` row. Infeasible or failed primes keep their row with empty
/// `minimum` and witness and `exact = false`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    pub p: u64,
    pub minimum: Option<usize>,
    /// Ascending residues joined by `;`.
    pub witness: String,
    pub nodes: u64,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub fn join_witness(members: &[u64]) -> String {
    members
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn split_witness(s: &str) -> Result<Vec<u64>, std::num::ParseIntError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(str::parse).collect()
}

impl From<&SearchResult> for SearchRecord {
    fn from(r: &SearchResult) -> Self {
        SearchRecord {
            n: r.n,
            p: r.p.get(),
            minimum: Some(r.minimum),
            witness: join_witness(&r.witness.to_vec()),
            nodes: r.nodes_explored,
            exact: r.exact,
            error: None,
        }
    }
}

impl From<&TableRow> for SearchRecord {
    fn from(row: &TableRow) -> Self {
        match &row.outcome {
            Ok(r) => r.into(),
            Err(e) => SearchRecord {
                n: row.n,
                p: row.p,
                minimum: None,
                witness: String::new(),
                nodes: 0,
                exact: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    p: u64,
    minimum: Option<usize>,
    witness: &'a str,
    nodes: u64,
    exact: bool,
}

pub fn search_csv(records: &[SearchRecord]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            n: r.n,
            p: r.p,
            minimum: r.minimum,
            witness: &r.witness,
            nodes: r.nodes,
            exact: r.exact,
        })?;
    }
    if records.is_empty() {
        return Ok(format!("{SEARCH_CSV_HEADER}\n"));
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn parse_search_csv(text: &str) -> anyhow::Result<Vec<SearchRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    anyhow::ensure!(header.join(",") == SEARCH_CSV_HEADER, "unexpected header {header:?}");
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        out.push(SearchRecord {
            n: rec[0].parse()?,
            p: rec[1].parse()?,
            minimum: if rec[2].is_empty() { None } else { Some(rec[2].parse()?) },
            witness: rec[3].to_string(),
            nodes: rec[4].parse()?,
            exact: rec[5].parse()?,
            error: None,
        });
    }
    Ok(out)
}

pub fn search_json(records: &[SearchRecord]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(records)
}

pub fn search_text(r: &SearchRecord) -> String {
    match (&r.minimum, &r.error) {
        (Some(m), _) => format!(
            "n={} p={} N={} witness={{{}}} nodes={} exact={}",
            r.n,
            r.p,
            m,
            r.witness.replace(';', ","),
            r.nodes,
            r.exact
        ),
        (None, e) => format!(
            "n={} p={} error: {}",
            r.n,
            r.p,
            e.as_deref().unwrap_or("no result")
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    pub base: u64,
    pub steps: Vec<u64>,
    pub sizes: Vec<usize>,
    pub elements: Vec<u64>,
    pub square_count: usize,
}

impl From<&GapHit> for GapRecord {
    fn from(h: &GapHit) -> Self {
        GapRecord {
            base: h.base,
            steps: h.steps.clone(),
            sizes: h.sizes.clone(),
            elements: h.elements.clone(),
            square_count: h.square_count,
        }
    }
}

/// One JSON object per line.
pub fn gap_json_lines(hits: &[GapHit]) -> serde_json::Result<String> {
    let mut out = String::new();
    for h in hits {
        out.push_str(&serde_json::to_string(&GapRecord::from(h))?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sqsum_core::zp::{min_sumset, PrimeModulus, SearchOptions};

    #[test]
    fn csv_layout() {
        let r = min_sumset(3, PrimeModulus::new(7).unwrap(), SearchOptions::default()).unwrap();
        let rec = SearchRecord::from(&r);
        let text = search_csv(std::slice::from_ref(&rec)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SEARCH_CSV_HEADER));
        let row = lines.next().unwrap();
        assert!(row.starts_with("3,7,5,0;1;2,"), "{row}");
        assert!(row.ends_with(",true"));
        assert_eq!(parse_search_csv(&text).unwrap(), vec![rec]);
    }

    #[test]
    fn empty_csv_has_header() {
        assert_eq!(search_csv(&[]).unwrap(), format!("{SEARCH_CSV_HEADER}\n"));
    }

    #[test]
    fn json_mirrors_csv_fields() {
        let r = min_sumset(5, PrimeModulus::new(13).unwrap(), SearchOptions::default()).unwrap();
        let rec = SearchRecord::from(&r);
        let v: serde_json::Value = serde_json::from_str(&search_json(std::slice::from_ref(&rec)).unwrap()).unwrap();
        let obj = v[0].as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        for k in SEARCH_CSV_HEADER.split(',') {
            assert!(keys.contains(&k), "{k} missing");
        }
        assert_eq!(obj["minimum"], 11);
        let back: Vec<SearchRecord> = serde_json::from_value(v).unwrap();
        assert_eq!(back, vec![rec]);
    }

    #[test]
    fn witness_strings() {
        assert_eq!(join_witness(&[0, 1, 2]), "0;1;2");
        assert_eq!(split_witness("0;1;2").unwrap(), vec![0, 1, 2]);
        assert_eq!(split_witness("").unwrap(), Vec::<u64>::new());
        assert!(split_witness("1;x").is_err());
    }

    #[test]
    fn gap_lines() {
        let hit = GapHit {
            base: 1,
            steps: vec![24],
            sizes: vec![3],
            elements: vec![1, 25, 49],
            square_count: 3,
        };
        let text = gap_json_lines(&[hit]).unwrap();
        assert_eq!(
            text,
            "{\"base\":1,\"steps\":[24],\"sizes\":[3],\"elements\":[1,25,49],\"square_count\":3}\n"
        );
    }
}
