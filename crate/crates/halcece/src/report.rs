//! Report files: JSON lines or CSV, one row per instance followed by one
//! aggregate row.
//!
//! Floats are written in shortest round-trip form, so rows read back with
//! [`parse_report`] re-aggregate to bit-identical means.

use std::io::Write;
use std::path::Path;

use halcece_core::metrics::{AggregateReport, MetricRow};
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    JsonLines,
}

/// Inputs lost before aggregation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Accounting {
    pub skipped_records: usize,
    pub unmapped_caption_objects: usize,
    pub unmapped_image_objects: usize,
    pub dropped_triples: usize,
    pub collapsed_duplicates: usize,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("report has no aggregate row")]
    NoAggregate,
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A report read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReport {
    pub rows: Vec<MetricRow>,
    pub means: Vec<(String, Option<f64>)>,
    pub chair_s: Option<f64>,
    pub instances: usize,
}

fn number(v: Option<f64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

pub fn render(rows: &[MetricRow], agg: &AggregateReport, accounting: &Accounting, format: Format) -> Vec<u8> {
    match format {
        Format::JsonLines => render_json_lines(rows, agg, accounting),
        Format::Csv => render_csv(rows, agg),
    }
}

fn render_json_lines(rows: &[MetricRow], agg: &AggregateReport, accounting: &Accounting) -> Vec<u8> {
    let mut out = Vec::new();
    for row in rows {
        let metrics: Map<String, Value> = row.values.iter().map(|(k, v)| (k.clone(), number(*v))).collect();
        let line = json!({ "scope": "instance", "id": row.id, "metrics": metrics });
        writeln!(out, "{line}").expect("writing to memory");
    }
    let means: Map<String, Value> = agg.metrics.iter().map(|m| (m.name.clone(), number(m.mean))).collect();
    let excluded: Map<String, Value> =
        agg.metrics.iter().filter(|m| m.excluded > 0).map(|m| (m.name.clone(), Value::from(m.excluded))).collect();
    let line = json!({
        "scope": "aggregate",
        "instances": agg.instances,
        "chair_s": number(agg.chair_s),
        "means": means,
        "excluded": excluded,
        "accounting": accounting,
    });
    writeln!(out, "{line}").expect("writing to memory");
    out
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn render_csv(rows: &[MetricRow], agg: &AggregateReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["scope".to_string(), "id".to_string()];
    header.extend(agg.metrics.iter().map(|m| m.name.clone()));
    header.extend(["chair_s".to_string(), "instances".to_string()]);
    w.write_record(&header).expect("writing to memory");
    for row in rows {
        let mut rec = vec!["instance".to_string(), row.id.clone()];
        rec.extend(row.values.iter().map(|(_, v)| cell(*v)));
        rec.extend([String::new(), String::new()]);
        w.write_record(&rec).expect("writing to memory");
    }
    let mut rec = vec!["aggregate".to_string(), String::new()];
    rec.extend(agg.metrics.iter().map(|m| cell(m.mean)));
    rec.extend([cell(agg.chair_s), agg.instances.to_string()]);
    w.write_record(&rec).expect("writing to memory");
    w.into_inner().expect("writing to memory")
}

pub fn parse_report(text: &str, format: Format) -> Result<ParsedReport, ReportError> {
    match format {
        Format::JsonLines => parse_json_lines(text),
        Format::Csv => parse_csv(text),
    }
}

fn malformed(line: usize, message: impl Into<String>) -> ReportError {
    ReportError::Malformed { line, message: message.into() }
}

fn values_of(line: usize, v: &Value) -> Result<Vec<(String, Option<f64>)>, ReportError> {
    let map = v.as_object().ok_or_else(|| malformed(line, "expected an object of metrics"))?;
    map.iter()
        .map(|(k, v)| match v {
            Value::Null => Ok((k.clone(), None)),
            other => other
                .as_f64()
                .map(|x| (k.clone(), Some(x)))
                .ok_or_else(|| malformed(line, format!("`{k}` is not a number"))),
        })
        .collect()
}

fn parse_json_lines(text: &str) -> Result<ParsedReport, ReportError> {
    let mut rows = Vec::new();
    let mut aggregate = None;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let n = i + 1;
        let v: Value = serde_json::from_str(line).map_err(|e| malformed(n, e.to_string()))?;
        match v["scope"].as_str() {
            Some("instance") => {
                let id = v["id"].as_str().ok_or_else(|| malformed(n, "missing id"))?.to_string();
                rows.push(MetricRow { id, values: values_of(n, &v["metrics"])? });
            }
            Some("aggregate") => {
                let instances = v["instances"].as_u64().ok_or_else(|| malformed(n, "missing instances"))? as usize;
                aggregate = Some((values_of(n, &v["means"])?, v["chair_s"].as_f64(), instances));
            }
            _ => return Err(malformed(n, "unknown scope")),
        }
    }
    let (means, chair_s, instances) = aggregate.ok_or(ReportError::NoAggregate)?;
    Ok(ParsedReport { rows, means, chair_s, instances })
}

fn parse_cell(line: usize, s: &str) -> Result<Option<f64>, ReportError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| malformed(line, format!("`{s}` is not a number")))
}

fn parse_csv(text: &str) -> Result<ParsedReport, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header.len() < 4 || header[0] != "scope" || header[1] != "id" {
        return Err(malformed(1, "unexpected header"));
    }
    let names = &header[2..header.len() - 2];
    let mut rows = Vec::new();
    let mut aggregate = None;
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let n = i + 2;
        let cells: Vec<Option<f64>> =
            rec.iter().skip(2).take(names.len()).map(|s| parse_cell(n, s)).collect::<Result<_, _>>()?;
        let values: Vec<(String, Option<f64>)> = names.iter().cloned().zip(cells).collect();
        match &rec[0] {
            "instance" => rows.push(MetricRow { id: rec[1].to_string(), values }),
            "aggregate" => {
                let chair_s = parse_cell(n, &rec[header.len() - 2])?;
                let instances = rec[header.len() - 1].parse().map_err(|_| malformed(n, "bad instance count"))?;
                aggregate = Some((values, chair_s, instances));
            }
            _ => return Err(malformed(n, "unknown scope")),
        }
    }
    let (means, chair_s, instances) = aggregate.ok_or(ReportError::NoAggregate)?;
    Ok(ParsedReport { rows, means, chair_s, instances })
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never see a partial report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
