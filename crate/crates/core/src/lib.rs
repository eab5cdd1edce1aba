//! Radial-based combined cleaning and resampling (RB-CCR) for imbalanced
//! binary classification, with the CCR baseline, reference resamplers,
//! lightweight classifiers, evaluation metrics, a cross-validation harness
//! and nonparametric tests for comparing methods.
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//! use rbccr_core::{rb_ccr_resample, Matrix, Method, ResamplerConfig, SamplingRegion};
//!
//! let x_min = Matrix::from_rows(&[[0.0, 0.0], [0.2, 0.1]]).unwrap();
//! let x_maj = Matrix::from_rows(&[[0.1, 0.0], [1.0, 1.0], [1.2, 0.9], [0.9, 1.3], [2.0, 2.0]]).unwrap();
//! let config = ResamplerConfig {
//!     region: SamplingRegion::H,
//!     ..ResamplerConfig::new(Method::RbCcr)
//! };
//! let out = rb_ccr_resample(&x_maj, &x_min, &config, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
//! assert!(out.synthetic.rows() <= 3);
//! ```

pub mod ccr;
pub mod classifier;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod matrix;
pub mod metrics;
pub mod potential;
pub mod resample;
pub mod sampling;
pub mod seed;
pub mod stats;

pub use ccr::{
    allocate_counts, compute_translations, sphere_radii, sphere_radius, AllocationPlan, EnergyBudget, SphereSpec,
};
pub use classifier::{fit, predict_labels, predict_scores, ClassifierSpec, TrainedModel};
pub use dataset::{
    parse_csv, parse_keel, split_by_class, standardize, stratified_kfold, Dataset, LabelColumn, ScalingParams,
};
pub use error::{Error, ParseError, Result};
pub use evaluation::{rank_table, run_cv, select_inner, CvPlan, EvalRecord, HyperGrid, RankTable};
pub use matrix::Matrix;
pub use metrics::{auc, confusion_metrics, Metric, MetricSet};
pub use potential::{potential, potential_batch, PotentialParams};
pub use resample::{
    ccr_resample, random_oversample, random_undersample, rb_ccr_resample, resample, resample_dataset, smote_resample,
    Method, Provenance, ResampleOutput, ResamplerConfig,
};
pub use sampling::{
    classify_region, guided_draw, guided_sample, region_bounds, sample_in_ball, GuidedDraw, GuidedSamplingConfig,
    Region, RegionBounds, SamplingRegion,
};
pub use stats::{friedman, holm_adjust, wilcoxon_one_sided, FriedmanResult, TestResult};
