//! Quartile and distribution summaries shared by the experiment modules.

use crate::error::{Error, Result};

/// Ascending three-quartile summary of a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuartileSummary {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub n: usize,
}

/// Quantile at rank `(n - 1) * q` of an ascending-sorted slice, with linear
/// interpolation between neighboring ranks.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Computes ascending quartiles (q1 <= median <= q3) of the samples.
///
/// The input order is irrelevant; a sorted copy is taken internally.
pub fn quartile_summary(samples: &[f64]) -> Result<QuartileSummary> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "quartile summary requires at least one sample".into(),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(QuartileSummary {
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        n: sorted.len(),
    })
}

/// Kolmogorov–Smirnov statistic: the sup-norm distance between the sample's
/// empirical CDF and a reference CDF, evaluated at the sample points.
pub fn empirical_cdf_distance<F>(samples: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "empirical CDF distance requires at least one sample".into(),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let below = (f - i as f64 / n).abs();
        let above = (f - (i + 1) as f64 / n).abs();
        sup = sup.max(below).max(above);
    }
    Ok(sup)
}
