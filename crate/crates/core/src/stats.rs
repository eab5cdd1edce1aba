//! Nonparametric comparison of methods across datasets.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::metrics::midranks;

pub const DEFAULT_ALPHA: f64 = 0.10;

/// Largest number of non-zero differences for which the exact null
/// distribution is used.
pub const WILCOXON_EXACT_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub significant: bool,
    /// Set when the test had nothing to compare (e.g. all differences zero).
    pub degenerate: bool,
}

impl TestResult {
    fn new(statistic: f64, p_value: f64, alpha: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        Self {
            statistic,
            p_value,
            alpha,
            significant: p_value < alpha,
            degenerate: false,
        }
    }
}

/// Ranks within a row where the largest value gets rank 1; ties share midranks.
pub fn descending_ranks(row: &[f64]) -> Vec<f64> {
    let negated: Vec<f64> = row.iter().map(|v| -v).collect();
    midranks(&negated)
}

/// One-sided Wilcoxon signed-rank test of `a > b`.
///
/// Zero differences are dropped. With at most
/// [`WILCOXON_EXACT_MAX_N`] remaining pairs the p-value comes from the
/// exact null distribution of the positive rank sum (midranks included);
/// above that a tie-corrected normal approximation is used. When every
/// difference is zero the result is degenerate with `p = 1`.
pub fn wilcoxon_one_sided(a: &[f64], b: &[f64], alpha: f64) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    if diffs.is_empty() {
        let mut r = TestResult::new(0.0, 1.0, alpha);
        r.degenerate = true;
        return Ok(r);
    }
    let n = diffs.len();
    if n < 5 {
        return Err(Error::Degenerate(format!(
            "wilcoxon needs at least 5 non-zero differences, got {n}"
        )));
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = midranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    let p = if n <= WILCOXON_EXACT_MAX_N {
        exact_upper_tail(&ranks, w_plus)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let tie_term: f64 = tie_group_sizes(&abs).map(|t| t * t * t - t).sum::<f64>() / 48.0;
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term;
        if var <= 0.0 {
            1.0
        } else {
            let z = (w_plus - mean) / var.sqrt();
            let normal = Normal::standard();
            1.0 - normal.cdf(z)
        }
    };
    Ok(TestResult::new(w_plus, p, alpha))
}

fn tie_group_sizes(values: &[f64]) -> impl Iterator<Item = f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut sizes = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        sizes.push((j - i) as f64);
        i = j;
    }
    sizes.into_iter()
}

/// `P(W+ >= observed)` with each rank's sign equally likely, by dynamic
/// programming over doubled (integer) ranks.
fn exact_upper_tail(ranks: &[f64], observed: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0f64; total + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let threshold = (observed * 2.0).round() as usize;
    let hits: f64 = counts[threshold..].iter().sum();
    hits / 2f64.powi(ranks.len() as i32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanResult {
    pub test: TestResult,
    /// Mean rank per method (column), 1 = best.
    pub average_ranks: Vec<f64>,
}

/// Friedman test on a datasets x methods table where larger is better.
pub fn friedman(results: &[Vec<f64>], alpha: f64) -> Result<FriedmanResult> {
    let n = results.len();
    let k = results.first().map_or(0, Vec::len);
    if n < 2 || k < 2 {
        return Err(Error::Degenerate(format!(
            "friedman needs at least 2 datasets and 2 methods, got {n}x{k}"
        )));
    }
    if let Some(row) = results.iter().find(|r| r.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: row.len(),
        });
    }
    let mut average_ranks = vec![0.0; k];
    for row in results {
        for (acc, r) in average_ranks.iter_mut().zip(descending_ranks(row)) {
            *acc += r;
        }
    }
    average_ranks.iter_mut().for_each(|r| *r /= n as f64);
    let (nf, kf) = (n as f64, k as f64);
    let sum_sq: f64 = average_ranks.iter().map(|r| r * r).sum();
    let statistic = (12.0 * nf / (kf * (kf + 1.0)) * (sum_sq - kf * (kf + 1.0) * (kf + 1.0) / 4.0)).max(0.0);
    let chi = ChiSquared::new(kf - 1.0).map_err(|e| Error::Degenerate(e.to_string()))?;
    let p = if statistic == 0.0 {
        1.0
    } else {
        1.0 - chi.cdf(statistic)
    };
    Ok(FriedmanResult {
        test: TestResult::new(statistic, p, alpha),
        average_ranks,
    })
}

/// Holm step-down adjustment, returned in input order.
pub fn holm_adjust(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (pos, &i) in order.iter().enumerate() {
        let v = ((m - pos) as f64 * p_values[i]).min(1.0);
        running = running.max(v);
        adjusted[i] = running;
    }
    adjusted
}

/// Comparison of one method against the control in a Friedman rank table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlComparison {
    pub method: usize,
    pub z: f64,
    /// Two-sided, unadjusted.
    pub p_value: f64,
    pub p_holm: f64,
}

/// Compares every method against the one with the best (lowest) average
/// rank using `z = (R_j - R_c) / sqrt(k(k+1) / 6N)`, Holm-adjusting the
/// two-sided p-values. Returns the control index and one entry per other
/// method, in column order.
pub fn control_comparisons(average_ranks: &[f64], n_datasets: usize) -> Result<(usize, Vec<ControlComparison>)> {
    let k = average_ranks.len();
    if k < 2 || n_datasets < 2 {
        return Err(Error::Degenerate(format!(
            "control comparison needs at least 2 datasets and 2 methods, got {n_datasets}x{k}"
        )));
    }
    let control = (0..k).fold(0, |b, j| if average_ranks[j] < average_ranks[b] { j } else { b });
    let se = ((k * (k + 1)) as f64 / (6.0 * n_datasets as f64)).sqrt();
    let normal = Normal::standard();
    let mut out: Vec<ControlComparison> = (0..k)
        .filter(|&j| j != control)
        .map(|j| {
            let z = (average_ranks[j] - average_ranks[control]) / se;
            ControlComparison {
                method: j,
                z,
                p_value: (2.0 * (1.0 - normal.cdf(z.abs()))).clamp(0.0, 1.0),
                p_holm: 0.0,
            }
        })
        .collect();
    let raw: Vec<f64> = out.iter().map(|c| c.p_value).collect();
    for (c, h) in out.iter_mut().zip(holm_adjust(&raw)) {
        c.p_holm = h;
    }
    Ok((control, out))
}
