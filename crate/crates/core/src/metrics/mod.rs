//! Per-instance reports, baselines and corpus aggregation.
//!
//! Every report flattens into a [`MetricRow`] of named optional values; the
//! aggregation, the identity checks and the file formats of the companion
//! crate all work on rows, so a report written to disk and read back
//! aggregates to exactly the same numbers.

mod aggregate;
mod chair;
mod correlate;
mod report;
mod text;

pub use aggregate::{aggregate, check_identities, AggregateError, AggregateReport, IdentityViolation, MetricSummary};
pub use chair::{chair_i, chair_s};
pub use correlate::{correlate, pearson};
pub use report::{
    evaluate, object_report, role_report, EvalOptions, Evaluation, InstanceReport, MetricRow, ObjectStats, RoleStats,
    TextStats, OBJECT_COLUMNS, ROLE_COLUMNS, TEXT_COLUMNS,
};
pub use text::{bleu, google_bleu, rouge_l, rouge_lsum, rouge_n, tokenize};

/// Compensated (Neumaier) sum.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Compensated mean, `None` for no values.
pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| neumaier_sum(values.iter().copied()) / values.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        assert_eq!(neumaier_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
        assert_eq!(neumaier_sum([]), 0.0);
        assert_eq!(mean(&[0.0, 1.0]), Some(0.5));
        assert_eq!(mean(&[]), None);
    }
}
