//! Gaussian RBF class potential: the cumulative closeness of a point to a
//! collection of observations,
//!
//! `phi(x, X, gamma) = sum_i exp(-(|X_i - x| / gamma)^2)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{squared_euclidean, Matrix};

/// RBF spread. Always positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    gamma: f64,
}

impl PotentialParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(Self { gamma })
        } else {
            Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

#[inline]
pub(crate) fn potential_unchecked(x: &[f64], collection: &Matrix, inv_gamma_sq: f64) -> f64 {
    collection
        .iter_rows()
        .map(|row| (-squared_euclidean(row, x) * inv_gamma_sq).exp())
        .sum()
}

/// Potential of `x` with respect to `collection`. Zero for an empty collection.
pub fn potential(x: &[f64], collection: &Matrix, params: PotentialParams) -> Result<f64> {
    if !collection.is_empty() && collection.cols() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: collection.cols(),
            found: x.len(),
        });
    }
    Ok(potential_unchecked(x, collection, 1.0 / (params.gamma * params.gamma)))
}

/// Row-wise [`potential`].
pub fn potential_batch(points: &Matrix, collection: &Matrix, params: PotentialParams) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    if !collection.is_empty() && collection.cols() != points.cols() {
        return Err(Error::DimensionMismatch {
            expected: collection.cols(),
            found: points.cols(),
        });
    }
    let inv = 1.0 / (params.gamma * params.gamma);
    let work = points.rows() * collection.rows() * points.cols().max(1);
    if work < 1 << 16 {
        Ok(points
            .iter_rows()
            .map(|p| potential_unchecked(p, collection, inv))
            .collect())
    } else {
        Ok((0..points.rows())
            .into_par_iter()
            .map(|i| potential_unchecked(points.row(i), collection, inv))
            .collect())
    }
}
