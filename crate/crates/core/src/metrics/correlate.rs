//! Pearson correlation between metric columns.

use alloc::vec;
use alloc::vec::Vec;

use super::neumaier_sum;

/// Minimum number of paired observations for a coefficient.
pub const MIN_OBSERVATIONS: usize = 3;

/// Pearson coefficient over the rows where both values are present.
/// `None` with fewer than [`MIN_OBSERVATIONS`] pairs or when either side
/// is constant.
pub fn pearson(x: &[Option<f64>], y: &[Option<f64>]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "columns must have equal length");
    let pairs: Vec<(f64, f64)> = x.iter().zip(y).filter_map(|(a, b)| Some(((*a)?, (*b)?))).collect();
    if pairs.len() < MIN_OBSERVATIONS {
        return None;
    }
    let n = pairs.len() as f64;
    let mx = neumaier_sum(pairs.iter().map(|p| p.0)) / n;
    let my = neumaier_sum(pairs.iter().map(|p| p.1)) / n;
    let sxx = neumaier_sum(pairs.iter().map(|p| (p.0 - mx) * (p.0 - mx)));
    let syy = neumaier_sum(pairs.iter().map(|p| (p.1 - my) * (p.1 - my)));
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let sxy = neumaier_sum(pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)));
    Some((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Symmetric correlation matrix of `columns`. The diagonal is exactly 1
/// for every column that has a coefficient with itself.
pub fn correlate(columns: &[Vec<Option<f64>>]) -> Vec<Vec<Option<f64>>> {
    let k = columns.len();
    let mut out = vec![vec![None; k]; k];
    for i in 0..k {
        out[i][i] = pearson(&columns[i], &columns[i]).map(|_| 1.0);
        for j in i + 1..k {
            let r = pearson(&columns[i], &columns[j]);
            out[i][j] = r;
            out[j][i] = r;
        }
    }
    out
}
