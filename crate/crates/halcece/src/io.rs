//! Reading WordNet, datasets and override files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use halcece_core::ingest::OverridesError;
use halcece_core::{InstanceRecord, Overrides, Pos, Taxonomy, TaxonomyError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Taxonomy { path: PathBuf, source: TaxonomyError },
    #[error("{dir}: found {present} without {missing}")]
    HalfPos { dir: PathBuf, present: &'static str, missing: &'static str },
    #[error("{path}: {source}")]
    Overrides { path: PathBuf, source: OverridesError },
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Read { path: path.to_owned(), source })
}

/// Loads `data.noun`/`index.noun` and, when both are present,
/// `data.verb`/`index.verb` from a WNDB directory.
pub fn load_taxonomy(dir: &Path) -> Result<Taxonomy, LoadError> {
    let mut builder = Taxonomy::builder();
    for pos in [Pos::Noun, Pos::Verb] {
        let suffix = pos.file_suffix();
        let data = dir.join(format!("data.{suffix}"));
        let index = dir.join(format!("index.{suffix}"));
        if pos == Pos::Verb {
            match (data.exists(), index.exists()) {
                (false, false) => continue,
                (true, false) => {
                    return Err(LoadError::HalfPos { dir: dir.to_owned(), present: "data.verb", missing: "index.verb" })
                }
                (false, true) => {
                    return Err(LoadError::HalfPos { dir: dir.to_owned(), present: "index.verb", missing: "data.verb" })
                }
                (true, true) => {}
            }
        }
        let text = read(&data)?;
        builder
            .add_data(pos, &data.display().to_string(), &text)
            .map_err(|source| LoadError::Taxonomy { path: data.clone(), source })?;
        let text = read(&index)?;
        builder
            .add_index(pos, &index.display().to_string(), &text)
            .map_err(|source| LoadError::Taxonomy { path: index.clone(), source })?;
    }
    builder.build().map_err(|source| LoadError::Taxonomy { path: dir.to_owned(), source })
}

pub fn load_overrides(path: &Path, t: &Taxonomy) -> Result<Overrides, LoadError> {
    let wrap = |source| LoadError::Overrides { path: path.to_owned(), source };
    let overrides = Overrides::parse(&read(path)?).map_err(wrap)?;
    overrides.check(t).map_err(wrap)?;
    Ok(overrides)
}

/// A dataset line that could not be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordIssue {
    /// 1-based line number.
    pub line: usize,
    pub id: Option<String>,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct Dataset {
    pub records: Vec<InstanceRecord>,
    pub issues: Vec<RecordIssue>,
}

/// Parses a JSON-lines dataset. Blank lines are skipped; malformed records
/// and repeated ids are reported as issues rather than errors.
pub fn parse_dataset(text: &str) -> Dataset {
    let mut out = Dataset::default();
    let mut seen = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let issue = |id: Option<String>, message: String| RecordIssue { line: i + 1, id, message };
        let record: InstanceRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(e) => {
                out.issues.push(issue(None, e.to_string()));
                continue;
            }
        };
        if let Err(e) = record.validate() {
            out.issues.push(issue(Some(record.id.clone()), e.to_string()));
            continue;
        }
        if !seen.insert(record.id.clone()) {
            out.issues.push(issue(Some(record.id.clone()), format!("duplicate id `{}`", record.id)));
            continue;
        }
        out.records.push(record);
    }
    out
}

pub fn load_dataset(path: &Path) -> Result<Dataset, LoadError> {
    Ok(parse_dataset(&read(path)?))
}
