//! Report documents and their JSON/CSV serialization.
//!
//! All quantities are exact integer counts, key order is fixed by struct
//! order, and the timestamp defaults to `SOURCE_DATE_EPOCH` (or 0 when
//! unset), so identical runs serialize to identical bytes.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::nu::Caps;
use crate::verify::{CheckReport, DihedralRow, PruferRow, Scope, TheoremARow};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsRecord {
    pub coset_cap: u64,
    pub order_cap: u64,
    pub direct_cap: u64,
}

impl From<Caps> for CapsRecord {
    fn from(c: Caps) -> Self {
        CapsRecord {
            coset_cap: c.coset_cap as u64,
            order_cap: c.order_cap,
            direct_cap: c.direct_cap,
        }
    }
}

pub fn default_timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// One check outcome attributed to a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub group: String,
    pub check: String,
    pub scope: Scope,
    pub passed: bool,
    pub counterexample: Option<Vec<String>>,
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(group: impl Into<String>, report: CheckReport) -> Self {
        CheckRecord {
            group: group.into(),
            check: report.name,
            scope: report.scope,
            passed: report.passed,
            counterexample: report.counterexample,
            note: report.note,
        }
    }
}

/// One instrumentation row; incomplete rows carry the error instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub name: String,
    pub complete: bool,
    pub row: Option<TheoremARow>,
    pub error: Option<String>,
}

impl RowRecord {
    pub fn complete(row: TheoremARow) -> Self {
        RowRecord {
            name: row.name.clone(),
            complete: true,
            row: Some(row),
            error: None,
        }
    }

    pub fn incomplete(name: impl Into<String>, error: impl Into<String>) -> Self {
        RowRecord {
            name: name.into(),
            complete: false,
            row: None,
            error: Some(error.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool_version: String,
    pub timestamp: u64,
    pub caps: CapsRecord,
    pub seed: u64,
    pub rows: Vec<RowRecord>,
    pub checks: Vec<CheckRecord>,
}

impl ReportDocument {
    pub fn new(caps: Caps, seed: u64) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: default_timestamp(),
            caps: caps.into(),
            seed,
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    /// Rows sorted by group name; checks by (group, check) within the
    /// insertion order of groups is already deterministic, but sorting makes
    /// the output independent of evaluation order.
    pub fn finalize(&mut self) {
        self.rows.sort_by(|a, b| a.name.cmp(&b.name));
        self.checks
            .sort_by(|a, b| (a.group.as_str(), a.check.as_str()).cmp(&(b.group.as_str(), b.check.as_str())));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.rows.iter().all(|r| r.complete)
    }
}

/// Family table documents share the header; rows vary per family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument<R> {
    pub schema: u32,
    pub tool_version: String,
    pub timestamp: u64,
    pub caps: CapsRecord,
    pub seed: u64,
    pub family: String,
    pub rows: Vec<R>,
}

impl<R> TableDocument<R> {
    pub fn new(family: impl Into<String>, caps: Caps, seed: u64, rows: Vec<R>) -> Self {
        TableDocument {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: default_timestamp(),
            caps: caps.into(),
            seed,
            family: family.into(),
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DihedralOutcome {
    pub m: u64,
    pub complete: bool,
    pub row: Option<DihedralRow>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruferOutcome {
    pub p: u64,
    pub k: u32,
    pub complete: bool,
    pub row: Option<PruferRow>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(crate::error::Error::InternalCheck(format!(
                "unknown format `{other}`"
            ))),
        }
    }
}

/// Rows that know how to print themselves as one CSV line.
pub trait CsvRow {
    fn csv_header() -> &'static str;
    fn csv_line(&self) -> Option<String>;
}

impl CsvRow for RowRecord {
    fn csv_header() -> &'static str {
        "name,order_g,order_nu,order_h,n_max_tensor_class,order_nu_second_derived,order_g_second_derived,formula_ok"
    }

    fn csv_line(&self) -> Option<String> {
        let r = self.row.as_ref()?;
        Some(format!(
            "{},{},{},{},{},{},{},{}",
            r.name,
            r.order_g,
            r.order_nu,
            r.order_h,
            r.n_max_tensor_class,
            r.order_nu_second_derived,
            r.order_g_second_derived,
            r.formula_ok
        ))
    }
}

impl CsvRow for DihedralOutcome {
    fn csv_header() -> &'static str {
        "m,order_g,max_commutator_class,derived_order"
    }

    fn csv_line(&self) -> Option<String> {
        let r = self.row.as_ref()?;
        Some(format!(
            "{},{},{},{}",
            r.m, r.order_g, r.max_commutator_class, r.derived_order
        ))
    }
}

impl CsvRow for PruferOutcome {
    fn csv_header() -> &'static str {
        "p,k,order_g,max_tensor_class,derived_order"
    }

    fn csv_line(&self) -> Option<String> {
        let r = self.row.as_ref()?;
        Some(format!(
            "{},{},{},{},{}",
            r.p, r.k, r.order_g, r.max_tensor_class, r.derived_order
        ))
    }
}

pub fn render_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

fn csv_of_rows<R: CsvRow>(rows: &[R]) -> String {
    let mut s = String::from(R::csv_header());
    s.push('\n');
    for r in rows {
        if let Some(line) = r.csv_line() {
            s.push_str(&line);
            s.push('\n');
        }
    }
    s
}

/// Write a verification report. CSV carries the instrumentation rows only
/// (complete ones); JSON carries everything.
pub fn write_report(doc: &ReportDocument, format: ReportFormat, path: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Json => render_json(doc)?,
        ReportFormat::Csv => csv_of_rows(&doc.rows),
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn write_table<R: Serialize + CsvRow>(
    doc: &TableDocument<R>,
    format: ReportFormat,
    path: &Path,
) -> Result<()> {
    let text = match format {
        ReportFormat::Json => render_json(doc)?,
        ReportFormat::Csv => csv_of_rows(&doc.rows),
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ReportDocument> {
    read_json(path)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Scope;

    fn sample_row(name: &str) -> TheoremARow {
        TheoremARow {
            name: name.into(),
            order_g: 6,
            order_nu: 216,
            order_h: 6,
            n_max_tensor_class: 3,
            order_nu_second_derived: 3,
            order_g_second_derived: 1,
            formula_ok: true,
        }
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let mut doc = ReportDocument::new(Caps::default(), 42);
        doc.rows.push(RowRecord::complete(sample_row("S3")));
        doc.rows.push(RowRecord::incomplete("D99", "overflow"));
        doc.checks.push(CheckRecord::new(
            "S3",
            crate::verify::CheckReport::pass("basic-identities", Scope::Exhaustive),
        ));
        doc.finalize();

        let dir = std::env::temp_dir().join("nu-report-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        write_report(&doc, ReportFormat::Json, &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        let reread = read_report(&path).unwrap();
        assert_eq!(reread, doc);
        write_report(&reread, ReportFormat::Json, &path).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn empty_document_serializes() {
        let doc = ReportDocument::new(Caps::default(), 42);
        let text = render_json(&doc).unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_has_fixed_columns_and_skips_incomplete() {
        let mut doc = ReportDocument::new(Caps::default(), 42);
        doc.rows.push(RowRecord::complete(sample_row("S3")));
        doc.rows.push(RowRecord::incomplete("D99", "overflow"));
        let dir = std::env::temp_dir().join("nu-report-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.csv");
        write_report(&doc, ReportFormat::Csv, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,order_g,order_nu,order_h,n_max_tensor_class,order_nu_second_derived,order_g_second_derived,formula_ok"
        );
        assert_eq!(lines.next().unwrap(), "S3,6,216,6,3,3,1,true");
        assert!(lines.next().is_none());
    }

    #[test]
    fn rows_sort_by_name() {
        let mut doc = ReportDocument::new(Caps::default(), 42);
        doc.rows.push(RowRecord::complete(sample_row("Z1")));
        doc.rows.push(RowRecord::complete(sample_row("A1")));
        doc.finalize();
        assert_eq!(doc.rows[0].name, "A1");
    }
}
