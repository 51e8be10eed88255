//! Corpus-level aggregation: mean of per-instance values.
//!
//! Means are taken over per-instance ratios, not ratios of mean counts;
//! instances where a value is absent are left out of that metric's mean and
//! counted as exclusions.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{chair_s, mean, MetricRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("instance `{id}` violates {identity}")]
pub struct IdentityViolation {
    pub id: String,
    pub identity: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AggregateError {
    #[error("no instances to aggregate")]
    Empty,
    #[error("instance `{0}` has a different column set")]
    ColumnMismatch(String),
    #[error(transparent)]
    Identity(#[from] IdentityViolation),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub name: String,
    pub mean: Option<f64>,
    /// Instances contributing to the mean.
    pub present: usize,
    /// Instances where the value was absent.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub instances: usize,
    pub metrics: Vec<MetricSummary>,
    /// Fraction of captions with at least one hallucinated object.
    pub chair_s: Option<f64>,
}

impl AggregateReport {
    pub fn get(&self, name: &str) -> Option<&MetricSummary> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn mean(&self, name: &str) -> Option<f64> {
        self.get(name).and_then(|m| m.mean)
    }
}

/// Checks the per-instance identities between counts and rates, for the
/// column groups present in `row`. Rates are recomputed with the same
/// division and compared exactly.
pub fn check_identities(row: &MetricRow) -> Result<(), IdentityViolation> {
    let fail = |identity| Err(IdentityViolation { id: row.id.clone(), identity });
    let count = |k: &str| row.get(k).unwrap_or(f64::NAN);
    let rate = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let same = |a: Option<f64>, b: Option<f64>| a.map(f64::to_bits) == b.map(f64::to_bits);

    for (name, v) in &row.values {
        if let Some(v) = v {
            let is_rate = name.ends_with("_rate") || name.ends_with("granularity") || name == "chair_i";
            if is_rate && !(0.0..=1.0).contains(v) {
                return fail("rate range [0, 1]");
            }
        }
    }

    if row.has("hal") {
        let (n, hal) = (count("n_objects"), count("hal"));
        let (d, r, o, u, i) = (count("d"), count("r"), count("o"), count("u"), count("i"));
        if hal != d + r + o {
            return fail("Hal = |D| + |R| + |O|");
        }
        if n != count("correct") + d + r + o + u {
            return fail("|S| = |Correct| + |D| + |R| + |O| + |U|");
        }
        if !same(row.get("hal_rate"), rate(hal, n)) {
            return fail("HalRate = Hal / |S|");
        }
        for (k, c) in [("d_rate", d), ("r_rate", r), ("o_rate", o), ("u_rate", u)] {
            if !same(row.get(k), rate(c, n)) {
                return fail("phenomenon rate = count / |S|");
            }
        }
        if !same(row.get("granularity"), rate(i, count("n_image_objects")).map(|x| 1.0 - x)) {
            return fail("Granularity = 1 - |I| / |T|");
        }
        if !same(row.get("chair_i"), row.get("hal_rate")) {
            return fail("CHAIR_i = HalRate");
        }
    }

    if row.has("role_hal") {
        let (n, hal) = (count("n_roles"), count("role_hal"));
        let (d, r, i, ok) = (count("role_d"), count("role_r"), count("role_i"), count("role_correct"));
        if hal != d + r {
            return fail("Hal^r = |D^r| + |R^r|");
        }
        if n != ok + d + r {
            return fail("|S^r| = |Correct^r| + |D^r| + |R^r|");
        }
        if count("n_image_roles") != ok + r + i {
            return fail("|T^r| = |Correct^r| + |R^r| + |I^r|");
        }
        if !same(row.get("role_hal_rate"), rate(hal, n)) {
            return fail("HalRate^r = Hal^r / |S^r|");
        }
        if !same(row.get("role_d_rate"), rate(d, n)) || !same(row.get("role_r_rate"), rate(r, n)) {
            return fail("role phenomenon rate = count / |S^r|");
        }
        if !same(row.get("role_granularity"), rate(i, count("n_image_roles")).map(|x| 1.0 - x)) {
            return fail("Granularity^r = 1 - |I^r| / |T^r|");
        }
    }
    Ok(())
}

/// Means over `rows` in the given order. Every row must carry the same
/// columns and satisfy [`check_identities`].
pub fn aggregate(rows: &[MetricRow]) -> Result<AggregateReport, AggregateError> {
    let first = rows.first().ok_or(AggregateError::Empty)?;
    for row in rows {
        if !row.names().eq(first.names()) {
            return Err(AggregateError::ColumnMismatch(row.id.clone()));
        }
        check_identities(row)?;
    }
    let metrics = first
        .values
        .iter()
        .enumerate()
        .map(|(k, (name, _))| {
            let present: Vec<f64> = rows.iter().filter_map(|r| r.values[k].1).collect();
            MetricSummary {
                name: name.clone(),
                mean: mean(&present),
                present: present.len(),
                excluded: rows.len() - present.len(),
            }
        })
        .collect();
    let chair_s =
        if first.has("hal") { chair_s(rows.iter().filter_map(|r| r.get("hal")).map(|h| h > 0.0)) } else { None };
    Ok(AggregateReport { instances: rows.len(), metrics, chair_s })
}
