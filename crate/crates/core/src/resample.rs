//! Resampling methods behind one configuration type: CCR, RB-CCR and the
//! ROS / RUS / SMOTE baselines.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ccr::{allocate_counts, compute_translations, sphere_radii};
use crate::dataset::{split_by_class, Dataset};
use crate::error::{Error, Result};
use crate::matrix::{sorted_by_distance, Matrix};
use crate::sampling::{guided_sample, GuidedSamplingConfig, SamplingRegion, DEFAULT_CANDIDATES};

pub const DEFAULT_ENERGY: f64 = 5.0;
pub const DEFAULT_GAMMA: f64 = 1.0;
pub const DEFAULT_K_NEIGHBORS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    None,
    Ros,
    Rus,
    Smote,
    Ccr,
    RbCcr,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::None,
        Method::Ros,
        Method::Rus,
        Method::Smote,
        Method::Ccr,
        Method::RbCcr,
    ];

    /// Methods that measure distances and therefore expect standardized data.
    pub fn uses_distances(self) -> bool {
        matches!(self, Method::Smote | Method::Ccr | Method::RbCcr)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::None => "none",
            Method::Ros => "ros",
            Method::Rus => "rus",
            Method::Smote => "smote",
            Method::Ccr => "ccr",
            Method::RbCcr => "rb-ccr",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "none" => Ok(Method::None),
            "ros" => Ok(Method::Ros),
            "rus" => Ok(Method::Rus),
            "smote" => Ok(Method::Smote),
            "ccr" => Ok(Method::Ccr),
            "rb-ccr" | "rbccr" => Ok(Method::RbCcr),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResamplerConfig {
    pub method: Method,
    pub energy: f64,
    pub gamma: f64,
    pub region: SamplingRegion,
    pub candidates: usize,
    pub k_neighbors: usize,
    pub seed: u64,
    /// Allow distance-based methods on data that was never standardized.
    pub allow_unscaled: bool,
}

impl Default for ResamplerConfig {
    fn default() -> Self {
        Self {
            method: Method::None,
            energy: DEFAULT_ENERGY,
            gamma: DEFAULT_GAMMA,
            region: SamplingRegion::LEH,
            candidates: DEFAULT_CANDIDATES,
            k_neighbors: DEFAULT_K_NEIGHBORS,
            seed: 0,
            allow_unscaled: false,
        }
    }
}

impl ResamplerConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.method {
            Method::Ccr | Method::RbCcr => {
                if !(self.energy > 0.0 && self.energy.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "energy must be positive, got {}",
                        self.energy
                    )));
                }
                if self.method == Method::RbCcr {
                    GuidedSamplingConfig::new(self.candidates, self.region, self.gamma)?;
                }
            }
            Method::Smote if self.k_neighbors == 0 => {
                return Err(Error::InvalidParameter("k_neighbors must be at least 1".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// Short parameter string used in result tables, e.g. `energy=5;gamma=1;region=H`.
    pub fn params_string(&self) -> String {
        match self.method {
            Method::None | Method::Ros | Method::Rus => String::new(),
            Method::Smote => format!("k={}", self.k_neighbors),
            Method::Ccr => format!("energy={}", self.energy),
            Method::RbCcr => format!(
                "energy={};gamma={};region={};c={}",
                self.energy, self.gamma, self.region, self.candidates
            ),
        }
    }
}

/// Origin of a row in an assembled training set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    OriginalMajority,
    TranslatedMajority,
    OriginalMinority,
    Synthetic,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::OriginalMajority => "original-majority",
            Provenance::TranslatedMajority => "translated-majority",
            Provenance::OriginalMinority => "original-minority",
            Provenance::Synthetic => "synthetic",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original-majority" => Ok(Provenance::OriginalMajority),
            "translated-majority" => Ok(Provenance::TranslatedMajority),
            "original-minority" => Ok(Provenance::OriginalMinority),
            "synthetic" => Ok(Provenance::Synthetic),
            other => Err(Error::InvalidParameter(format!("unknown provenance `{other}`"))),
        }
    }
}

/// Result of resampling one `(X_maj, X_min)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ResampleOutput {
    /// Majority rows after cleaning (or undersampling).
    pub majority: Matrix,
    /// Index into the input majority matrix for every output majority row.
    pub majority_source: Vec<usize>,
    /// Whether each output majority row was moved.
    pub translated: Vec<bool>,
    pub minority: Matrix,
    pub synthetic: Matrix,
    /// Index of the minority row each synthetic point was generated from.
    pub synthetic_source: Vec<usize>,
    /// Sphere radii, for the sphere-based methods.
    pub radii: Option<Vec<f64>>,
    /// Majority count over minority count after resampling.
    pub achieved_ratio: f64,
}

impl ResampleOutput {
    fn new(
        majority: Matrix,
        majority_source: Vec<usize>,
        translated: Vec<bool>,
        minority: Matrix,
        synthetic: Matrix,
        synthetic_source: Vec<usize>,
        radii: Option<Vec<f64>>,
    ) -> Self {
        let achieved_ratio = majority.rows() as f64 / (minority.rows() + synthetic.rows()) as f64;
        Self {
            majority,
            majority_source,
            translated,
            minority,
            synthetic,
            synthetic_source,
            radii,
            achieved_ratio,
        }
    }

    fn passthrough(x_maj: &Matrix, x_min: &Matrix) -> Self {
        Self::new(
            x_maj.clone(),
            (0..x_maj.rows()).collect(),
            vec![false; x_maj.rows()],
            x_min.clone(),
            Matrix::with_cols(x_min.cols()),
            Vec::new(),
            None,
        )
    }

    /// Training rows in the fixed order majority, minority, synthetic, with a
    /// minority flag and provenance per row.
    pub fn training_set(&self) -> (Matrix, Vec<bool>, Vec<Provenance>) {
        let x = self
            .majority
            .vstack(&self.minority)
            .and_then(|m| m.vstack(&self.synthetic))
            .expect("resampled parts share a width");
        let mut is_min = vec![false; self.majority.rows()];
        is_min.resize(x.rows(), true);
        let mut prov: Vec<Provenance> = self
            .translated
            .iter()
            .map(|&t| {
                if t {
                    Provenance::TranslatedMajority
                } else {
                    Provenance::OriginalMajority
                }
            })
            .collect();
        prov.extend(std::iter::repeat_n(Provenance::OriginalMinority, self.minority.rows()));
        prov.extend(std::iter::repeat_n(Provenance::Synthetic, self.synthetic.rows()));
        (x, is_min, prov)
    }
}

fn check_classes(x_maj: &Matrix, x_min: &Matrix) -> Result<()> {
    if x_min.is_empty() {
        return Err(Error::EmptyClass("minority"));
    }
    if x_maj.is_empty() {
        return Err(Error::EmptyClass("majority"));
    }
    if x_maj.cols() != x_min.cols() {
        return Err(Error::DimensionMismatch {
            expected: x_maj.cols(),
            found: x_min.cols(),
        });
    }
    Ok(())
}

/// Radial-based combined cleaning and resampling.
///
/// Sphere radii come from the energy budget, majority rows inside spheres
/// are translated to their surfaces, and each minority row receives
/// synthetic samples in inverse proportion to its radius, drawn by
/// potential-guided sampling in the configured region.
pub fn rb_ccr_resample<R: Rng + ?Sized>(
    x_maj: &Matrix,
    x_min: &Matrix,
    config: &ResamplerConfig,
    rng: &mut R,
) -> Result<ResampleOutput> {
    check_classes(x_maj, x_min)?;
    if x_maj.rows() < x_min.rows() {
        return Err(Error::InvalidParameter("majority smaller than minority".into()));
    }
    let sampling = GuidedSamplingConfig::new(config.candidates, config.region, config.gamma)?;
    let radii = sphere_radii(x_min, x_maj, config.energy)?;

    let t = compute_translations(x_min, x_maj, &radii, rng)?;
    let mut majority = x_maj.clone();
    let mut translated = vec![false; x_maj.rows()];
    for (j, moved) in translated.iter_mut().enumerate() {
        let tj = t.row(j);
        if tj.iter().any(|&v| v != 0.0) {
            *moved = true;
            for (v, d) in majority.row_mut(j).iter_mut().zip(tj) {
                *v += d;
            }
        }
    }

    let plan = allocate_counts(&radii, x_maj.rows(), x_min.rows())?;
    let seeds: Vec<u64> = (0..x_min.rows()).map(|_| rng.random()).collect();
    let parts: Vec<Matrix> = (0..x_min.rows())
        .into_par_iter()
        .map(|i| {
            let mut local = ChaCha8Rng::seed_from_u64(seeds[i]);
            guided_sample(x_min.row(i), radii[i], x_min, &sampling, plan.counts[i], &mut local)
        })
        .collect::<Result<_>>()?;
    let mut synthetic = Matrix::with_cols(x_min.cols());
    let mut synthetic_source = Vec::with_capacity(plan.total());
    for (i, part) in parts.iter().enumerate() {
        synthetic = synthetic.vstack(part)?;
        synthetic_source.extend(std::iter::repeat_n(i, part.rows()));
    }
    Ok(ResampleOutput::new(
        majority,
        (0..x_maj.rows()).collect(),
        translated,
        x_min.clone(),
        synthetic,
        synthetic_source,
        Some(radii),
    ))
}

/// Combined cleaning and resampling: RB-CCR with unfiltered (LEH) sampling.
pub fn ccr_resample<R: Rng + ?Sized>(
    x_maj: &Matrix,
    x_min: &Matrix,
    energy: f64,
    candidates: usize,
    rng: &mut R,
) -> Result<ResampleOutput> {
    let config = ResamplerConfig {
        method: Method::RbCcr,
        energy,
        region: SamplingRegion::LEH,
        candidates,
        ..ResamplerConfig::default()
    };
    rb_ccr_resample(x_maj, x_min, &config, rng)
}

/// SMOTE: interpolates between a random minority row and one of its
/// `k_neighbors` nearest minority neighbours until the classes balance.
/// `k_neighbors` is clamped to `|X_min| - 1`.
pub fn smote_resample<R: Rng + ?Sized>(
    x_maj: &Matrix,
    x_min: &Matrix,
    k_neighbors: usize,
    rng: &mut R,
) -> Result<ResampleOutput> {
    check_classes(x_maj, x_min)?;
    if x_min.rows() < 2 {
        return Err(Error::ClassTooSmall {
            class: "minority".into(),
            count: x_min.rows(),
            needed: 2,
        });
    }
    if k_neighbors == 0 {
        return Err(Error::InvalidParameter("k_neighbors must be at least 1".into()));
    }
    let k = k_neighbors.min(x_min.rows() - 1);
    let neighbors: Vec<Vec<usize>> = (0..x_min.rows())
        .map(|a| {
            sorted_by_distance(x_min.row(a), x_min)
                .into_iter()
                .map(|(j, _)| j)
                .filter(|&j| j != a)
                .take(k)
                .collect()
        })
        .collect();
    let deficit = x_maj.rows().saturating_sub(x_min.rows());
    let mut synthetic = Matrix::with_cols(x_min.cols());
    let mut source = Vec::with_capacity(deficit);
    let mut point = vec![0.0; x_min.cols()];
    for _ in 0..deficit {
        let a = rng.random_range(0..x_min.rows());
        let b = neighbors[a][rng.random_range(0..k)];
        let u: f64 = rng.random();
        for ((p, xa), xb) in point.iter_mut().zip(x_min.row(a)).zip(x_min.row(b)) {
            *p = xa + u * (xb - xa);
        }
        synthetic.push_row(&point)?;
        source.push(a);
    }
    Ok(ResampleOutput::new(
        x_maj.clone(),
        (0..x_maj.rows()).collect(),
        vec![false; x_maj.rows()],
        x_min.clone(),
        synthetic,
        source,
        None,
    ))
}

/// Duplicates random minority rows until the classes balance.
pub fn random_oversample<R: Rng + ?Sized>(x_maj: &Matrix, x_min: &Matrix, rng: &mut R) -> Result<ResampleOutput> {
    check_classes(x_maj, x_min)?;
    let deficit = x_maj.rows().saturating_sub(x_min.rows());
    let picks: Vec<usize> = (0..deficit).map(|_| rng.random_range(0..x_min.rows())).collect();
    Ok(ResampleOutput::new(
        x_maj.clone(),
        (0..x_maj.rows()).collect(),
        vec![false; x_maj.rows()],
        x_min.clone(),
        x_min.select_rows(&picks),
        picks,
        None,
    ))
}

/// Keeps a random subset of majority rows, in input order, of minority size.
pub fn random_undersample<R: Rng + ?Sized>(x_maj: &Matrix, x_min: &Matrix, rng: &mut R) -> Result<ResampleOutput> {
    check_classes(x_maj, x_min)?;
    if x_maj.rows() <= x_min.rows() {
        return Ok(ResampleOutput::passthrough(x_maj, x_min));
    }
    let mut keep = index::sample(rng, x_maj.rows(), x_min.rows()).into_vec();
    keep.sort_unstable();
    Ok(ResampleOutput::new(
        x_maj.select_rows(&keep),
        keep,
        vec![false; x_min.rows()],
        x_min.clone(),
        Matrix::with_cols(x_min.cols()),
        Vec::new(),
        None,
    ))
}

/// Runs the configured method on raw class matrices.
pub fn resample<R: Rng + ?Sized>(
    x_maj: &Matrix,
    x_min: &Matrix,
    config: &ResamplerConfig,
    rng: &mut R,
) -> Result<ResampleOutput> {
    config.validate()?;
    match config.method {
        Method::None => {
            check_classes(x_maj, x_min)?;
            Ok(ResampleOutput::passthrough(x_maj, x_min))
        }
        Method::Ros => random_oversample(x_maj, x_min, rng),
        Method::Rus => random_undersample(x_maj, x_min, rng),
        Method::Smote => smote_resample(x_maj, x_min, config.k_neighbors, rng),
        Method::Ccr => ccr_resample(x_maj, x_min, config.energy, config.candidates, rng),
        Method::RbCcr => rb_ccr_resample(x_maj, x_min, config, rng),
    }
}

/// Resamples a dataset with an RNG seeded from `config.seed`.
///
/// Distance-based methods refuse unstandardized data unless
/// `config.allow_unscaled` is set.
pub fn resample_dataset(d: &Dataset, config: &ResamplerConfig) -> Result<ResampleOutput> {
    if config.method.uses_distances() && !d.is_standardized() && !config.allow_unscaled {
        return Err(Error::NotStandardized);
    }
    let (x_min, x_maj) = split_by_class(d);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    resample(&x_maj, &x_min, config, &mut rng)
}
