//! 5x2 cross-validated evaluation with inner 3-fold hyperparameter selection
//! by AUC, and cross-dataset rank tables.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{fit, predict_scores, ClassifierSpec};
use crate::dataset::{standardize, stratified_kfold, Dataset, ScalingParams};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metrics::{auc, evaluate, Metric, MetricSet};
use crate::resample::{resample, Method, ResampleOutput, ResamplerConfig};
use crate::sampling::SamplingRegion;
use crate::seed::SeedDeriver;
use crate::stats::descending_ranks;

pub const ENERGY_GRID: [f64; 8] = [0.5, 1.0, 2.5, 5.0, 10.0, 25.0, 50.0, 100.0];
pub const GAMMA_GRID: [f64; 5] = [0.5, 1.0, 2.5, 5.0, 10.0];
pub const SMOTE_K_GRID: [usize; 5] = [1, 3, 5, 7, 9];

/// Where standardization parameters are fitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Standardization {
    /// Fit on each outer training half and apply to both halves.
    #[default]
    TrainingFold,
    /// Fit once on the whole dataset before splitting.
    WholeDataset,
}

/// Where inner-CV resampling happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerResampling {
    /// Resample each inner training fold; validation folds stay untouched.
    #[default]
    PerInnerFold,
    /// Resample the outer training half once, then cross-validate on the
    /// resampled set. Leaks synthetic neighbours of validation rows.
    OnceOnOuterTrain,
}

/// The evaluation protocol. Fold counts are fixed; only the seed and the
/// two compatibility switches vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CvPlan {
    pub repetitions: usize,
    pub outer_folds: usize,
    pub inner_folds: usize,
    pub master_seed: u64,
    pub standardization: Standardization,
    pub inner_resampling: InnerResampling,
}

impl CvPlan {
    pub fn new(master_seed: u64) -> Self {
        Self {
            repetitions: 5,
            outer_folds: 2,
            inner_folds: 3,
            master_seed,
            standardization: Standardization::default(),
            inner_resampling: InnerResampling::default(),
        }
    }
}

/// Candidate configurations of one method, searched in order.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperGrid {
    pub name: String,
    pub configs: Vec<ResamplerConfig>,
}

impl HyperGrid {
    pub fn single(name: impl Into<String>, config: ResamplerConfig) -> Self {
        Self {
            name: name.into(),
            configs: vec![config],
        }
    }

    pub fn baseline(method: Method) -> Self {
        Self::single(method.to_string(), ResamplerConfig::new(method))
    }

    pub fn smote() -> Self {
        Self {
            name: Method::Smote.to_string(),
            configs: SMOTE_K_GRID
                .iter()
                .map(|&k| ResamplerConfig {
                    k_neighbors: k,
                    ..ResamplerConfig::new(Method::Smote)
                })
                .collect(),
        }
    }

    pub fn ccr() -> Self {
        Self {
            name: Method::Ccr.to_string(),
            configs: ENERGY_GRID
                .iter()
                .map(|&energy| ResamplerConfig {
                    energy,
                    ..ResamplerConfig::new(Method::Ccr)
                })
                .collect(),
        }
    }

    /// RB-CCR over the energy grid and, for filtered regions, the gamma grid.
    /// LEH ignores gamma, so it contributes one entry per energy. A single
    /// region is named `rb-ccr[R]`; several regions make the `rb-ccr`
    /// cross-validated-region variant.
    pub fn rb_ccr(regions: &[SamplingRegion]) -> Self {
        let mut configs = Vec::new();
        for &region in regions {
            for &energy in &ENERGY_GRID {
                let gammas: &[f64] = if region == SamplingRegion::LEH {
                    &[1.0]
                } else {
                    &GAMMA_GRID
                };
                for &gamma in gammas {
                    configs.push(ResamplerConfig {
                        energy,
                        gamma,
                        region,
                        ..ResamplerConfig::new(Method::RbCcr)
                    });
                }
            }
        }
        let name = match regions {
            [r] => format!("rb-ccr[{r}]"),
            _ => "rb-ccr".to_string(),
        };
        Self { name, configs }
    }

    /// Default grid for each method.
    pub fn for_method(method: Method) -> Self {
        match method {
            Method::None | Method::Ros | Method::Rus => Self::baseline(method),
            Method::Smote => Self::smote(),
            Method::Ccr => Self::ccr(),
            Method::RbCcr => Self::rb_ccr(&SamplingRegion::ALL),
        }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.configs.is_empty() {
            return Err(Error::InvalidParameter(format!("grid `{}` is empty", self.name)));
        }
        self.configs.iter().try_for_each(ResamplerConfig::validate)
    }
}

/// One outer-fold result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub dataset: String,
    pub method: String,
    pub params: String,
    pub classifier: String,
    pub rep: usize,
    pub fold: usize,
    pub precision: f64,
    pub recall: f64,
    pub specificity: f64,
    pub auc: f64,
    pub f_measure: f64,
    pub g_mean: f64,
    pub achieved_ratio: f64,
}

impl EvalRecord {
    pub fn metric(&self, m: Metric) -> f64 {
        match m {
            Metric::Precision => self.precision,
            Metric::Recall => self.recall,
            Metric::Specificity => self.specificity,
            Metric::Auc => self.auc,
            Metric::FMeasure => self.f_measure,
            Metric::GMean => self.g_mean,
        }
    }
}

/// Outcome of training on one split and scoring the held-out rows.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldOutcome {
    pub metrics: MetricSet,
    pub achieved_ratio: f64,
    /// Dataset row indices that fed the resampled training set.
    pub lineage: Vec<usize>,
}

fn class_split(d: &Dataset, rows: &[usize]) -> (Vec<usize>, Vec<usize>) {
    rows.iter().partition(|&&i| d.labels[i] == d.minority_label)
}

fn resample_rows(
    features: &Matrix,
    min_rows: &[usize],
    maj_rows: &[usize],
    config: &ResamplerConfig,
    seed: u64,
) -> Result<ResampleOutput> {
    let x_min = features.select_rows(min_rows);
    let x_maj = features.select_rows(maj_rows);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    resample(&x_maj, &x_min, config, &mut rng)
}

fn lineage(out: &ResampleOutput, min_rows: &[usize], maj_rows: &[usize]) -> Vec<usize> {
    let mut l: Vec<usize> = out.majority_source.iter().map(|&j| maj_rows[j]).collect();
    l.extend_from_slice(min_rows);
    l.extend(out.synthetic_source.iter().map(|&i| min_rows[i]));
    l
}

/// Resamples `train` rows of `features`, fits, and scores `test` rows.
/// `features` must already be in the space the resampler expects.
pub fn run_fold(
    d: &Dataset,
    features: &Matrix,
    train: &[usize],
    test: &[usize],
    config: &ResamplerConfig,
    classifier: &ClassifierSpec,
    seed: u64,
) -> Result<FoldOutcome> {
    let (min_rows, maj_rows) = class_split(d, train);
    let out = resample_rows(features, &min_rows, &maj_rows, config, seed)?;
    let (x_train, y_train, _) = out.training_set();
    let model = fit(classifier, &x_train, &y_train)?;
    let scores = predict_scores(&model, &features.select_rows(test))?;
    let truth: Vec<bool> = test.iter().map(|&i| d.labels[i] == d.minority_label).collect();
    Ok(FoldOutcome {
        metrics: evaluate(&truth, &scores, 0.5)?,
        achieved_ratio: out.achieved_ratio,
        lineage: lineage(&out, &min_rows, &maj_rows),
    })
}

fn inner_score(
    train: &Dataset,
    folds: &[(Vec<usize>, Vec<usize>)],
    config: &ResamplerConfig,
    classifier: &ClassifierSpec,
    plan: &CvPlan,
    seed: SeedDeriver,
) -> Result<f64> {
    let mut total = 0.0;
    match plan.inner_resampling {
        InnerResampling::PerInnerFold => {
            for (f, (tr, va)) in folds.iter().enumerate() {
                let o = run_fold(
                    train,
                    &train.features,
                    tr,
                    va,
                    config,
                    classifier,
                    seed.u64(f as u64).finish(),
                )?;
                total += o.metrics.auc.unwrap_or(0.0);
            }
        }
        InnerResampling::OnceOnOuterTrain => {
            let all: Vec<usize> = (0..train.len()).collect();
            let (min_rows, maj_rows) = class_split(train, &all);
            let out = resample_rows(&train.features, &min_rows, &maj_rows, config, seed.finish())?;
            let (x, y, _) = out.training_set();
            let labels = y.iter().map(|&m| if m { "1" } else { "0" }.to_string()).collect();
            let names = train.feature_names.clone();
            let mut resampled = Dataset::new(&train.name, names, x, labels)?.assume_standardized();
            resampled.minority_label = "1".into();
            let inner = stratified_kfold(&resampled, plan.inner_folds, seed.u64(u64::MAX).finish())?;
            for (tr, va) in &inner {
                let model = fit(classifier, &resampled.features.select_rows(tr), &select(&y, tr))?;
                let scores = predict_scores(&model, &resampled.features.select_rows(va))?;
                total += auc(&select(&y, va), &scores, &true)?;
            }
            return Ok(total / inner.len() as f64);
        }
    }
    Ok(total / folds.len() as f64)
}

fn select<T: Clone>(v: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| v[i].clone()).collect()
}

/// Index of the grid entry with the best mean inner-fold AUC; the first
/// entry wins ties. A singleton grid is returned without any fitting.
pub fn select_inner(
    train: &Dataset,
    grid: &HyperGrid,
    classifier: &ClassifierSpec,
    plan: &CvPlan,
    inner_seed: u64,
) -> Result<usize> {
    grid.validate()?;
    if grid.len() == 1 {
        return Ok(0);
    }
    let folds = stratified_kfold(train, plan.inner_folds, inner_seed)?;
    let scores: Vec<Result<f64>> = grid
        .configs
        .par_iter()
        .enumerate()
        .map(|(g, config)| {
            let seed = SeedDeriver::new(inner_seed).u64(g as u64);
            inner_score(train, &folds, config, classifier, plan, seed)
        })
        .collect();
    let mut best: Option<(usize, f64)> = None;
    let mut first_err = None;
    for (g, s) in scores.into_iter().enumerate() {
        match s {
            Ok(v) if best.is_none_or(|(_, b)| v > b) => best = Some((g, v)),
            Ok(_) => {}
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some((g, _)), _) => Ok(g),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("grid is non-empty"),
    }
}

/// 5x2 CV of one method grid with one classifier on one dataset.
pub fn run_cv(
    dataset: &Dataset,
    grid: &HyperGrid,
    classifier: &ClassifierSpec,
    plan: &CvPlan,
) -> Result<Vec<EvalRecord>> {
    grid.validate()?;
    classifier.validate()?;
    let base = match plan.standardization {
        Standardization::WholeDataset => standardize(dataset).0,
        Standardization::TrainingFold => dataset.clone(),
    };
    let tasks: Vec<(usize, usize)> = (0..plan.repetitions)
        .flat_map(|r| (0..plan.outer_folds).map(move |f| (r, f)))
        .collect();
    let folds: Vec<Vec<(Vec<usize>, Vec<usize>)>> = (0..plan.repetitions)
        .map(|r| {
            let seed = SeedDeriver::new(plan.master_seed)
                .str(&dataset.name)
                .u64(r as u64)
                .finish();
            stratified_kfold(&base, plan.outer_folds, seed)
        })
        .collect::<Result<_>>()?;

    tasks
        .par_iter()
        .map(|&(rep, fold)| {
            let (train, test) = &folds[rep][fold];
            let features = match plan.standardization {
                Standardization::WholeDataset => base.features.clone(),
                Standardization::TrainingFold => {
                    let params = ScalingParams::fit(&base.features.select_rows(train));
                    let mut z = params.apply(&base.features)?;
                    // columns constant on the training half carry no signal
                    for j in 0..z.cols() {
                        if train
                            .iter()
                            .all(|&i| base.features.get(i, j) == base.features.get(train[0], j))
                        {
                            for i in 0..z.rows() {
                                z.set(i, j, 0.0);
                            }
                        }
                    }
                    z
                }
            };
            let scaled = base.with_features(features, true)?;
            let task = SeedDeriver::new(plan.master_seed)
                .str(&dataset.name)
                .u64(rep as u64)
                .u64(fold as u64);
            let inner_seed = task.str("inner").finish();
            let train_ds = scaled.subset(train);
            let g = select_inner(&train_ds, grid, classifier, plan, inner_seed)?;
            let config = &grid.configs[g];
            let outcome = run_fold(
                &scaled,
                &scaled.features,
                train,
                test,
                config,
                classifier,
                task.u64(g as u64).finish(),
            )?;
            let m = outcome.metrics;
            Ok(EvalRecord {
                dataset: dataset.name.clone(),
                method: grid.name.clone(),
                params: config.params_string(),
                classifier: classifier.to_string(),
                rep,
                fold,
                precision: m.precision,
                recall: m.recall,
                specificity: m.specificity,
                auc: m.auc.unwrap_or(f64::NAN),
                f_measure: m.f_measure,
                g_mean: m.g_mean,
                achieved_ratio: outcome.achieved_ratio,
            })
        })
        .collect()
}

/// Per-dataset mean metric for each method, with cross-dataset average ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub metric: Metric,
    pub datasets: Vec<String>,
    pub methods: Vec<String>,
    /// `means[dataset][method]`.
    pub means: Vec<Vec<f64>>,
    /// `ranks[dataset][method]`, 1 = best, midranks on ties.
    pub ranks: Vec<Vec<f64>>,
    pub average_ranks: Vec<f64>,
}

impl RankTable {
    pub fn column(&self, method: &str) -> Option<Vec<f64>> {
        let j = self.methods.iter().position(|m| m == method)?;
        Some(self.means.iter().map(|row| row[j]).collect())
    }

    pub fn average_rank(&self, method: &str) -> Option<f64> {
        let j = self.methods.iter().position(|m| m == method)?;
        Some(self.average_ranks[j])
    }
}

/// Mean per `(dataset, method)` over all records, for one metric.
pub fn mean_table(records: &[EvalRecord], metric: Metric) -> BTreeMap<(String, String), f64> {
    let mut acc: BTreeMap<(String, String), (f64, usize)> = BTreeMap::new();
    for r in records {
        let e = acc.entry((r.dataset.clone(), r.method.clone())).or_insert((0.0, 0));
        e.0 += r.metric(metric);
        e.1 += 1;
    }
    acc.into_iter().map(|(k, (s, n))| (k, s / n as f64)).collect()
}

/// Builds the rank table. Methods keep first-appearance order; every method
/// must have records on every dataset.
pub fn rank_table(records: &[EvalRecord], metric: Metric) -> Result<RankTable> {
    let mut datasets: Vec<String> = Vec::new();
    let mut methods: Vec<String> = Vec::new();
    for r in records {
        if !datasets.contains(&r.dataset) {
            datasets.push(r.dataset.clone());
        }
        if !methods.contains(&r.method) {
            methods.push(r.method.clone());
        }
    }
    if datasets.is_empty() {
        return Err(Error::Degenerate("no records".into()));
    }
    let table = mean_table(records, metric);
    let mut means = Vec::with_capacity(datasets.len());
    for d in &datasets {
        let row = methods
            .iter()
            .map(|m| {
                table
                    .get(&(d.clone(), m.clone()))
                    .copied()
                    .ok_or_else(|| Error::Degenerate(format!("no records for method `{m}` on dataset `{d}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        means.push(row);
    }
    let ranks: Vec<Vec<f64>> = means.iter().map(|row| descending_ranks(row)).collect();
    let mut average_ranks = vec![0.0; methods.len()];
    for row in &ranks {
        for (a, r) in average_ranks.iter_mut().zip(row) {
            *a += r;
        }
    }
    average_ranks.iter_mut().for_each(|a| *a /= datasets.len() as f64);
    Ok(RankTable {
        metric,
        datasets,
        methods,
        means,
        ranks,
        average_ranks,
    })
}
