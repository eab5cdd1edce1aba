//! Precision, recall, specificity, AUC, F-measure and G-mean with the
//! minority class as the positive class.
//!
//! Ratios whose denominator is zero are reported as 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub precision: f64,
    pub recall: f64,
    pub specificity: f64,
    /// `None` when only labels were available.
    pub auc: Option<f64>,
    pub f_measure: f64,
    pub g_mean: f64,
}

/// The six reported metrics, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Precision,
    Recall,
    Specificity,
    Auc,
    FMeasure,
    GMean,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Precision,
        Metric::Recall,
        Metric::Specificity,
        Metric::Auc,
        Metric::FMeasure,
        Metric::GMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Precision => "precision",
            Metric::Recall => "recall",
            Metric::Specificity => "specificity",
            Metric::Auc => "auc",
            Metric::FMeasure => "f_measure",
            Metric::GMean => "g_mean",
        }
    }

    pub fn from_name(s: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.name() == s)
    }
}

impl MetricSet {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Precision => self.precision,
            Metric::Recall => self.recall,
            Metric::Specificity => self.specificity,
            Metric::Auc => self.auc.unwrap_or(f64::NAN),
            Metric::FMeasure => self.f_measure,
            Metric::GMean => self.g_mean,
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Label-based metrics. Panics if the slices differ in length.
pub fn confusion_metrics<T: PartialEq>(true_labels: &[T], predicted_labels: &[T], minority_label: &T) -> MetricSet {
    assert_eq!(
        true_labels.len(),
        predicted_labels.len(),
        "label vectors differ in length"
    );
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for (t, p) in true_labels.iter().zip(predicted_labels) {
        match (t == minority_label, p == minority_label) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (false, false) => tn += 1,
            (true, false) => fn_ += 1,
        }
    }
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let specificity = ratio(tn, tn + fp);
    let f_measure = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    MetricSet {
        precision,
        recall,
        specificity,
        auc: None,
        f_measure,
        g_mean: (recall * specificity).sqrt(),
    }
}

/// Midranks (1-based) of `values`; tied values share the mean of their ranks.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end
        let r = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = r;
        }
        start = end;
    }
    ranks
}

/// Rank-based ROC AUC (Mann-Whitney U over `n_min * n_maj`), midranks for ties.
pub fn auc<T: PartialEq>(true_labels: &[T], scores: &[f64], minority_label: &T) -> Result<f64> {
    if true_labels.len() != scores.len() {
        return Err(Error::DimensionMismatch {
            expected: true_labels.len(),
            found: scores.len(),
        });
    }
    let ranks = midranks(scores);
    let mut n_min = 0usize;
    let mut rank_sum = 0.0;
    for (t, r) in true_labels.iter().zip(&ranks) {
        if t == minority_label {
            n_min += 1;
            rank_sum += r;
        }
    }
    let n_maj = true_labels.len() - n_min;
    if n_min == 0 || n_maj == 0 {
        return Err(Error::SingleClass);
    }
    let u = rank_sum - (n_min * (n_min + 1)) as f64 / 2.0;
    Ok(u / (n_min * n_maj) as f64)
}

/// All six metrics from minority flags and scores, thresholding at `threshold`.
pub fn evaluate(truth: &[bool], scores: &[f64], threshold: f64) -> Result<MetricSet> {
    let predicted: Vec<bool> = scores.iter().map(|&s| s >= threshold).collect();
    let mut m = confusion_metrics(truth, &predicted, &true);
    m.auc = Some(auc(truth, scores, &true)?);
    Ok(m)
}
