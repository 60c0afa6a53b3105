use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{digits_for, format_float, CheckKind, CheckResult};
use crate::error::Result;
use crate::lab::{ConjectureReport, Prediction, Verdict};
use crate::runner::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub version: String,
    pub config: RunConfig,
    pub timestamp: String,
}

/// One row of a report. Numeric values are decimal strings; `bits` is the
/// precision they were computed at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub kind: CheckKind,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    pub bits: u32,
    pub pass: bool,
    pub inconclusive: bool,
    /// Observed sign of a sign-condition quantity: "+", "-" or "0".
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub values: BTreeMap<String, String>,
    pub notes: Vec<String>,
    /// Sort key: `p` or `n`.
    #[serde(skip)]
    pub(crate) index: u64,
}

impl Record {
    pub fn status(&self) -> &'static str {
        match (self.pass, self.inconclusive) {
            (true, _) => "pass",
            (false, true) => "inconclusive",
            (false, false) => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn tally(records: &[Record]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.status() {
                "pass" => s.pass += 1,
                "fail" => s.fail += 1,
                _ => s.inconclusive += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub header: Header,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl ReportFile {
    /// Sorts records by `(id, p or n)`, keeping the given order within
    /// ties, and tallies the summary.
    pub fn new(header: Header, mut records: Vec<Record>) -> ReportFile {
        records.sort_by(|a, b| (&a.id, a.index).cmp(&(&b.id, b.index)));
        let summary = Summary::tally(&records);
        ReportFile {
            header,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<ReportFile> {
        let mut r: ReportFile = serde_json::from_str(s)?;
        for rec in &mut r.records {
            rec.index = rec
                .params
                .get("p")
                .or_else(|| rec.params.get("n"))
                .and_then(|v| v.parse().ok())
                .unwrap_or(0);
        }
        Ok(r)
    }

    /// Summary-level fields only; full values live in the JSON form.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "kind", "params", "status", "residual", "bits"])?;
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w.write_record([
                r.id.as_str(),
                &r.kind.to_string(),
                &params.join(" "),
                r.status(),
                r.residual.as_deref().unwrap_or(""),
                &r.bits.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| crate::Error::Io(e.error))?;
    Ok(())
}

pub(crate) fn check_record(r: &CheckResult) -> Record {
    let rec = r.record();
    Record {
        id: rec.id,
        kind: rec.kind,
        params: r.params.to_map(),
        lhs: rec.lhs,
        rhs: rec.rhs,
        residual: rec.residual,
        bits: rec.bits,
        pass: rec.pass,
        inconclusive: false,
        sign: None,
        values: BTreeMap::new(),
        notes: rec.notes,
        index: r.params.index(),
    }
}

pub(crate) fn conjecture_record(r: &ConjectureReport) -> Record {
    let digits = digits_for(r.bits_used);
    let mut params = BTreeMap::new();
    params.insert("p".to_string(), r.p.to_string());
    if !r.variant.is_empty() {
        params.insert("variant".to_string(), r.variant.clone());
    }
    let sign = match (&r.predicted, &r.observed) {
        (Prediction::Sign { .. }, Some(z)) => Some(
            match (r.verdict, z.real().is_sign_positive()) {
                (Verdict::Inconclusive, _) => "0",
                (_, true) => "+",
                (_, false) => "-",
            }
            .to_string(),
        ),
        _ => None,
    };
    Record {
        id: r.conjecture_id.clone(),
        kind: r.kind,
        params,
        lhs: r.observed_string(digits),
        rhs: r.predicted.to_string(),
        residual: r.residual.as_ref().map(|x| format_float(x, 6)),
        bits: r.bits_used,
        pass: r.verdict == Verdict::Pass,
        inconclusive: r.verdict == Verdict::Inconclusive,
        sign,
        values: BTreeMap::new(),
        notes: r.notes.clone(),
        index: r.p,
    }
}
