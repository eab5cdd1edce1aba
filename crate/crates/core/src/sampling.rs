//! Potential-guided sampling inside a sphere.
//!
//! Candidates are drawn uniformly in the ball around a seed observation and
//! scored by their minority potential. The spread of candidate potentials
//! around the seed's own potential splits the ball into a low (L), equal (E)
//! and high (H) region; only candidates in the requested region (plus the
//! seed itself) are eligible to be returned.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::ccr::random_unit_vector;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::potential::{potential_unchecked, PotentialParams};

/// Default number of candidates drawn per sphere.
pub const DEFAULT_CANDIDATES: usize = 100;

/// Region a single candidate falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    L,
    E,
    H,
}

/// Target region for sampling. `LEH` keeps every candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SamplingRegion {
    L,
    E,
    H,
    #[default]
    LEH,
}

impl SamplingRegion {
    pub const ALL: [SamplingRegion; 4] = [Self::L, Self::E, Self::H, Self::LEH];

    pub fn accepts(self, region: Region) -> bool {
        matches!(
            (self, region),
            (Self::LEH, _) | (Self::L, Region::L) | (Self::E, Region::E) | (Self::H, Region::H)
        )
    }
}

impl fmt::Display for SamplingRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::L => "L",
            Self::E => "E",
            Self::H => "H",
            Self::LEH => "LEH",
        })
    }
}

impl FromStr for SamplingRegion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L" => Ok(Self::L),
            "E" => Ok(Self::E),
            "H" => Ok(Self::H),
            "LEH" => Ok(Self::LEH),
            other => Err(Error::InvalidParameter(format!("unknown region `{other}`"))),
        }
    }
}

/// Potential thresholds splitting a sphere into L/E/H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionBounds {
    pub seed_potential: f64,
    pub bound_l: f64,
    pub bound_h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidedSamplingConfig {
    pub candidates: usize,
    pub region: SamplingRegion,
    pub params: PotentialParams,
}

impl GuidedSamplingConfig {
    pub fn new(candidates: usize, region: SamplingRegion, gamma: f64) -> Result<Self> {
        if candidates == 0 {
            return Err(Error::InvalidParameter("candidates must be at least 1".into()));
        }
        Ok(Self {
            candidates,
            region,
            params: PotentialParams::new(gamma)?,
        })
    }
}

/// Uniform draw from the closed ball of `radius` around `center`.
pub fn sample_in_ball<R: Rng + ?Sized>(center: &[f64], radius: f64, rng: &mut R) -> Vec<f64> {
    if radius == 0.0 || center.is_empty() {
        return center.to_vec();
    }
    let m = center.len();
    let dir = random_unit_vector(m, rng);
    let u: f64 = rng.random();
    let rho = radius * u.powf(1.0 / m as f64);
    center.iter().zip(dir).map(|(c, d)| c + rho * d).collect()
}

/// Bounds a third of the way from the seed potential towards the smallest
/// and the largest candidate potential.
pub fn region_bounds(seed_potential: f64, candidate_potentials: &[f64]) -> Result<RegionBounds> {
    if candidate_potentials.is_empty() {
        return Err(Error::InvalidParameter("no candidate potentials".into()));
    }
    let min = candidate_potentials.iter().copied().fold(f64::INFINITY, f64::min);
    let max = candidate_potentials.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RegionBounds {
        seed_potential,
        bound_l: seed_potential - (seed_potential - min) / 3.0,
        bound_h: seed_potential + (max - seed_potential) / 3.0,
    })
}

/// L is checked before H, so collapsed bounds classify everything at the
/// bound as L.
pub fn classify_region(z: f64, bounds: &RegionBounds) -> Region {
    if z <= bounds.bound_l {
        Region::L
    } else if z >= bounds.bound_h {
        Region::H
    } else {
        Region::E
    }
}

/// Everything one guided-sampling call produced.
#[derive(Debug, Clone, PartialEq)]
pub struct GuidedDraw {
    pub samples: Matrix,
    /// The seed followed by every accepted candidate.
    pub kept: Matrix,
    /// `None` for unfiltered (LEH) sampling, where no potentials are needed.
    pub bounds: Option<RegionBounds>,
}

/// Draws `n` synthetic points around `seed_point`, with replacement, from
/// `{seed_point}` plus the candidates that fall into `config.region`.
///
/// Candidate potentials are measured against the whole minority collection,
/// the seed included.
pub fn guided_sample<R: Rng + ?Sized>(
    seed_point: &[f64],
    radius: f64,
    x_min: &Matrix,
    config: &GuidedSamplingConfig,
    n: usize,
    rng: &mut R,
) -> Result<Matrix> {
    guided_draw(seed_point, radius, x_min, config, n, rng).map(|d| d.samples)
}

/// [`guided_sample`] that also reports the kept set and region bounds.
/// Nothing is drawn when `n == 0`.
pub fn guided_draw<R: Rng + ?Sized>(
    seed_point: &[f64],
    radius: f64,
    x_min: &Matrix,
    config: &GuidedSamplingConfig,
    n: usize,
    rng: &mut R,
) -> Result<GuidedDraw> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::InvalidParameter(format!("negative radius {radius}")));
    }
    if !x_min.is_empty() && x_min.cols() != seed_point.len() {
        return Err(Error::DimensionMismatch {
            expected: x_min.cols(),
            found: seed_point.len(),
        });
    }
    let m = seed_point.len();
    if n == 0 {
        return Ok(GuidedDraw {
            samples: Matrix::with_cols(m),
            kept: Matrix::with_cols(m),
            bounds: None,
        });
    }
    let candidates: Vec<Vec<f64>> = (0..config.candidates)
        .map(|_| sample_in_ball(seed_point, radius, rng))
        .collect();

    let mut kept = Matrix::with_cols(m);
    kept.push_row(seed_point)?;
    let mut bounds = None;
    if config.region == SamplingRegion::LEH {
        for c in &candidates {
            kept.push_row(c)?;
        }
    } else {
        let g = config.params.gamma();
        let inv = 1.0 / (g * g);
        let seed_potential = potential_unchecked(seed_point, x_min, inv);
        let z: Vec<f64> = candidates.iter().map(|c| potential_unchecked(c, x_min, inv)).collect();
        let b = region_bounds(seed_potential, &z)?;
        for (c, &zi) in candidates.iter().zip(&z) {
            if config.region.accepts(classify_region(zi, &b)) {
                kept.push_row(c)?;
            }
        }
        bounds = Some(b);
    }
    let picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..kept.rows())).collect();
    Ok(GuidedDraw {
        samples: kept.select_rows(&picks),
        kept,
        bounds,
    })
}
