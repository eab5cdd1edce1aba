//! Score-producing binary classifiers: k-nearest neighbours, Gaussian naive
//! Bayes and logistic regression. Labels are `true` for the minority class
//! and every score estimates the minority probability.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{squared_euclidean, Matrix};

pub const DEFAULT_KNN_K: usize = 5;
pub const DEFAULT_LEARNING_RATE: f64 = 0.1;
pub const DEFAULT_ITERATIONS: usize = 1000;
const GNB_VAR_SMOOTHING: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassifierSpec {
    Knn { k: usize },
    Gnb,
    LogReg { learning_rate: f64, iterations: usize },
}

impl ClassifierSpec {
    pub fn knn() -> Self {
        ClassifierSpec::Knn { k: DEFAULT_KNN_K }
    }

    pub fn logreg() -> Self {
        ClassifierSpec::LogReg {
            learning_rate: DEFAULT_LEARNING_RATE,
            iterations: DEFAULT_ITERATIONS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ClassifierSpec::Knn { k: 0 } => Err(Error::InvalidParameter("knn k must be at least 1".into())),
            ClassifierSpec::LogReg { learning_rate, .. } if learning_rate.is_nan() || learning_rate <= 0.0 => Err(
                Error::InvalidParameter(format!("learning rate must be positive, got {learning_rate}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierSpec::Knn { .. } => f.write_str("knn"),
            ClassifierSpec::Gnb => f.write_str("gnb"),
            ClassifierSpec::LogReg { .. } => f.write_str("logreg"),
        }
    }
}

impl FromStr for ClassifierSpec {
    type Err = Error;

    /// Parses `knn`, `knn:7`, `gnb`, `nb`, `logreg`, `lr`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = s.split_once(':').map_or((s.as_str(), None), |(a, b)| (a, Some(b)));
        let spec = match (name, arg) {
            ("knn", None) => Self::knn(),
            ("knn", Some(k)) => ClassifierSpec::Knn {
                k: k.parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad knn k `{k}`")))?,
            },
            ("gnb" | "nb", None) => ClassifierSpec::Gnb,
            ("logreg" | "lr", None) => Self::logreg(),
            _ => return Err(Error::InvalidParameter(format!("unknown classifier `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    Knn {
        k: usize,
        features: Matrix,
        labels: Vec<bool>,
    },
    Gnb {
        /// Index 0 is the majority class, 1 the minority.
        means: [Vec<f64>; 2],
        variances: [Vec<f64>; 2],
        log_priors: [f64; 2],
    },
    LogReg {
        weights: Vec<f64>,
        bias: f64,
    },
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Mean binary cross-entropy of a linear model.
pub fn log_loss(weights: &[f64], bias: f64, x: &Matrix, y: &[bool]) -> f64 {
    let n = x.rows() as f64;
    x.iter_rows()
        .zip(y)
        .map(|(row, &yi)| {
            let z = dot(weights, row) + bias;
            // log(1 + e^z) - y z, stable for large |z|
            let softplus = if z > 0.0 {
                z + (-z).exp().ln_1p()
            } else {
                z.exp().ln_1p()
            };
            softplus - if yi { z } else { 0.0 }
        })
        .sum::<f64>()
        / n
}

/// Gradient of [`log_loss`] with respect to `(weights, bias)`.
pub fn log_loss_gradient(weights: &[f64], bias: f64, x: &Matrix, y: &[bool]) -> (Vec<f64>, f64) {
    let n = x.rows() as f64;
    let mut gw = vec![0.0; weights.len()];
    let mut gb = 0.0;
    for (row, &yi) in x.iter_rows().zip(y) {
        let err = sigmoid(dot(weights, row) + bias) - if yi { 1.0 } else { 0.0 };
        for (g, v) in gw.iter_mut().zip(row) {
            *g += err * v;
        }
        gb += err;
    }
    gw.iter_mut().for_each(|g| *g /= n);
    (gw, gb / n)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fits a classifier. Deterministic: logistic regression starts from zero.
pub fn fit(spec: &ClassifierSpec, features: &Matrix, labels: &[bool]) -> Result<TrainedModel> {
    spec.validate()?;
    if features.rows() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: features.rows(),
            found: labels.len(),
        });
    }
    let n_min = labels.iter().filter(|&&l| l).count();
    if n_min == 0 || n_min == labels.len() {
        return Err(Error::SingleClass);
    }
    Ok(match *spec {
        ClassifierSpec::Knn { k } => TrainedModel::Knn {
            k,
            features: features.clone(),
            labels: labels.to_vec(),
        },
        ClassifierSpec::Gnb => fit_gnb(features, labels),
        ClassifierSpec::LogReg {
            learning_rate,
            iterations,
        } => {
            let mut weights = vec![0.0; features.cols()];
            let mut bias = 0.0;
            for _ in 0..iterations {
                let (gw, gb) = log_loss_gradient(&weights, bias, features, labels);
                for (w, g) in weights.iter_mut().zip(gw) {
                    *w -= learning_rate * g;
                }
                bias -= learning_rate * gb;
            }
            TrainedModel::LogReg { weights, bias }
        }
    })
}

fn fit_gnb(x: &Matrix, y: &[bool]) -> TrainedModel {
    let m = x.cols();
    let mut counts = [0usize; 2];
    let mut means = [vec![0.0; m], vec![0.0; m]];
    for (row, &yi) in x.iter_rows().zip(y) {
        let c = yi as usize;
        counts[c] += 1;
        means[c].iter_mut().zip(row).for_each(|(a, v)| *a += v);
    }
    for c in 0..2 {
        means[c].iter_mut().for_each(|a| *a /= counts[c] as f64);
    }
    let mut variances = [vec![0.0; m], vec![0.0; m]];
    for (row, &yi) in x.iter_rows().zip(y) {
        let c = yi as usize;
        for ((a, v), mu) in variances[c].iter_mut().zip(row).zip(&means[c]) {
            *a += (v - mu) * (v - mu);
        }
    }
    // smoothing relative to the widest feature, as in common implementations
    let n = y.len() as f64;
    let mut max_var = 0.0f64;
    for j in 0..m {
        let mu = x.iter_rows().map(|r| r[j]).sum::<f64>() / n;
        let v = x.iter_rows().map(|r| (r[j] - mu) * (r[j] - mu)).sum::<f64>() / n;
        max_var = max_var.max(v);
    }
    let eps = GNB_VAR_SMOOTHING * max_var.max(f64::MIN_POSITIVE);
    for c in 0..2 {
        variances[c].iter_mut().for_each(|a| *a = *a / counts[c] as f64 + eps);
    }
    TrainedModel::Gnb {
        means,
        variances,
        log_priors: [(counts[0] as f64 / n).ln(), (counts[1] as f64 / n).ln()],
    }
}

impl TrainedModel {
    fn n_features(&self) -> usize {
        match self {
            TrainedModel::Knn { features, .. } => features.cols(),
            TrainedModel::Gnb { means, .. } => means[0].len(),
            TrainedModel::LogReg { weights, .. } => weights.len(),
        }
    }

    /// Per-class log joint likelihood for naive Bayes: `[majority, minority]`.
    fn gnb_joint(means: &[Vec<f64>; 2], variances: &[Vec<f64>; 2], log_priors: &[f64; 2], x: &[f64]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for c in 0..2 {
            let mut ll = log_priors[c];
            for ((v, mu), var) in x.iter().zip(&means[c]).zip(&variances[c]) {
                ll -= 0.5 * ((2.0 * std::f64::consts::PI * var).ln() + (v - mu) * (v - mu) / var);
            }
            out[c] = ll;
        }
        out
    }

    /// Posterior `[majority, minority]` for naive Bayes models.
    pub fn gnb_posteriors(&self, x: &[f64]) -> Option<[f64; 2]> {
        match self {
            TrainedModel::Gnb {
                means,
                variances,
                log_priors,
            } => {
                let j = Self::gnb_joint(means, variances, log_priors, x);
                let p_min = sigmoid(j[1] - j[0]);
                Some([sigmoid(j[0] - j[1]), p_min])
            }
            _ => None,
        }
    }

    fn score_one(&self, x: &[f64]) -> f64 {
        match self {
            TrainedModel::Knn { k, features, labels } => {
                let mut d: Vec<(f64, usize)> = features
                    .iter_rows()
                    .enumerate()
                    .map(|(i, r)| (squared_euclidean(r, x), i))
                    .collect();
                let k = (*k).min(d.len());
                let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
                if k < d.len() {
                    d.select_nth_unstable_by(k - 1, cmp);
                }
                let hits = d[..k].iter().filter(|(_, i)| labels[*i]).count();
                hits as f64 / k as f64
            }
            TrainedModel::Gnb { .. } => self.gnb_posteriors(x).map_or(0.0, |p| p[1]),
            TrainedModel::LogReg { weights, bias } => sigmoid(dot(weights, x) + bias),
        }
    }
}

/// Minority-class scores in `[0, 1]`.
pub fn predict_scores(model: &TrainedModel, features: &Matrix) -> Result<Vec<f64>> {
    if features.cols() != model.n_features() && !features.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: model.n_features(),
            found: features.cols(),
        });
    }
    Ok(features.iter_rows().map(|x| model.score_one(x)).collect())
}

/// `true` (minority) wherever the score reaches `threshold`.
pub fn labels_from_scores(scores: &[f64], threshold: f64) -> Vec<bool> {
    scores.iter().map(|&s| s >= threshold).collect()
}

pub fn predict_labels(model: &TrainedModel, features: &Matrix, threshold: f64) -> Result<Vec<bool>> {
    Ok(labels_from_scores(&predict_scores(model, features)?, threshold))
}
