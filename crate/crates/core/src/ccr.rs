//! Energy-budget sphere expansion, majority cleaning and proportional
//! allocation of synthetic samples.
//!
//! Every minority observation grows a sphere. Expanding the sphere up to the
//! next majority neighbour costs the distance travelled times the number of
//! majority observations enclosed at the new radius, so each enclosed
//! neighbour makes further growth more expensive. Majority observations that
//! end up inside a sphere are pushed to its surface, and spheres with smaller
//! radii (harder neighbourhoods) receive more synthetic samples.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{euclidean, sorted_by_distance, Matrix};

/// Radius of the sphere around one minority observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec {
    pub center_index: usize,
    pub radius: f64,
}

/// Energy available while one sphere expands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    pub energy: f64,
    pub remaining: f64,
}

impl EnergyBudget {
    pub fn new(energy: f64) -> Result<Self> {
        if energy > 0.0 && energy.is_finite() {
            Ok(Self {
                energy,
                remaining: energy,
            })
        } else {
            Err(Error::InvalidParameter(format!(
                "energy must be positive, got {energy}"
            )))
        }
    }
}

/// Number of synthetic samples to draw around each minority observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationPlan {
    pub counts: Vec<usize>,
}

impl AllocationPlan {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Expands one sphere through `sorted_distances` (distances from the centre
/// to every majority observation, ascending) until the budget runs out.
///
/// If every neighbour is absorbed before the budget is spent, the radius
/// stays at the farthest neighbour and the leftover energy is discarded.
pub fn sphere_radius(sorted_distances: &[f64], energy: f64) -> Result<f64> {
    let mut budget = EnergyBudget::new(energy)?;
    if sorted_distances.iter().any(|d| !d.is_finite() || *d < 0.0) || sorted_distances.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedDistances);
    }
    let mut radius = 0.0;
    for (k, &d) in sorted_distances.iter().enumerate() {
        let enclosed = (k + 1) as f64;
        let delta = -(d - radius) * enclosed;
        if budget.remaining + delta > 0.0 {
            radius = d;
            budget.remaining += delta;
        } else {
            radius += budget.remaining / enclosed;
            break;
        }
    }
    Ok(radius)
}

/// Sphere radius for every minority row against the majority rows.
pub fn sphere_radii(x_min: &Matrix, x_maj: &Matrix, energy: f64) -> Result<Vec<f64>> {
    EnergyBudget::new(energy)?;
    if x_min.cols() != x_maj.cols() && !x_maj.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: x_min.cols(),
            found: x_maj.cols(),
        });
    }
    (0..x_min.rows())
        .into_par_iter()
        .map(|i| {
            let d: Vec<f64> = sorted_by_distance(x_min.row(i), x_maj)
                .into_iter()
                .map(|(_, d)| d)
                .collect();
            sphere_radius(&d, energy)
        })
        .collect()
}

/// Accumulated displacement of every majority row caused by all spheres.
///
/// Each majority row strictly inside sphere `i` is moved along the ray from
/// the centre so that, for that sphere alone, it lands on the surface. A row
/// coinciding with a centre is moved in a uniformly random direction drawn
/// from `rng`. All displacements are computed from the original positions.
pub fn compute_translations<R: Rng + ?Sized>(
    x_min: &Matrix,
    x_maj: &Matrix,
    radii: &[f64],
    rng: &mut R,
) -> Result<Matrix> {
    if radii.len() != x_min.rows() {
        return Err(Error::DimensionMismatch {
            expected: x_min.rows(),
            found: radii.len(),
        });
    }
    let m = x_maj.cols();
    if !x_min.is_empty() && !x_maj.is_empty() && x_min.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: x_min.cols(),
        });
    }
    let mut t = Matrix::zeros(x_maj.rows(), m);
    for (i, &r) in radii.iter().enumerate() {
        let center = x_min.row(i);
        for j in 0..x_maj.rows() {
            let xj = x_maj.row(j);
            let d = euclidean(center, xj);
            if d >= r {
                continue;
            }
            let tj = t.row_mut(j);
            if d > 0.0 {
                let scale = (r - d) / d;
                for ((acc, a), c) in tj.iter_mut().zip(xj).zip(center) {
                    *acc += scale * (a - c);
                }
            } else {
                let dir = random_unit_vector(m, rng);
                for (acc, u) in tj.iter_mut().zip(dir) {
                    *acc += r * u;
                }
            }
        }
    }
    Ok(t)
}

pub(crate) fn random_unit_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// `g_i = floor(r_i^-1 / sum_k r_k^-1 * (n_maj - n_min))`.
///
/// The floors are not topped up, so the total may fall short of the deficit.
pub fn allocate_counts(radii: &[f64], n_maj: usize, n_min: usize) -> Result<AllocationPlan> {
    if n_maj < n_min {
        return Err(Error::InvalidParameter(format!(
            "majority count {n_maj} below minority count {n_min}"
        )));
    }
    if let Some(i) = radii.iter().position(|&r| r.is_nan() || r <= 0.0) {
        return Err(Error::ZeroRadius(i));
    }
    let deficit = n_maj - n_min;
    let inv: Vec<f64> = radii.iter().map(|r| r.recip()).collect();
    let total: f64 = inv.iter().sum();
    // 1e-9 absorbs rounding in exact-integer shares like 0.75 * 4.
    let mut counts: Vec<usize> = inv
        .iter()
        .map(|w| ((w * deficit as f64) / total + 1e-9).floor() as usize)
        .collect();
    while counts.iter().sum::<usize>() > deficit {
        if let Some(c) = counts.iter_mut().rev().find(|c| **c > 0) {
            *c -= 1;
        }
    }
    Ok(AllocationPlan { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hand_traced_radii() {
        assert_eq!(sphere_radius(&[1.0], 0.5).unwrap(), 0.5);
        assert_eq!(sphere_radius(&[1.0, 1.5], 1.8).unwrap(), 1.4);
        assert_eq!(sphere_radius(&[1.0], 5.0).unwrap(), 1.0);
    }

    #[test]
    fn radius_without_neighbours_is_zero() {
        assert_eq!(sphere_radius(&[], 3.0).unwrap(), 0.0);
    }

    #[test]
    fn radius_input_validation() {
        assert_eq!(sphere_radius(&[2.0, 1.0], 1.0), Err(Error::UnsortedDistances));
        assert_eq!(sphere_radius(&[-1.0, 1.0], 1.0), Err(Error::UnsortedDistances));
        assert!(matches!(sphere_radius(&[1.0], 0.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn energy_below_first_distance_is_the_radius() {
        assert_eq!(sphere_radius(&[3.0, 4.0], 2.5).unwrap(), 2.5);
    }

    #[test]
    fn translation_lands_on_surface() {
        let x_min = Matrix::from_rows(&[[0.0, 0.0]]).unwrap();
        let x_maj = Matrix::from_rows(&[[0.5, 0.0], [2.0, 0.0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = compute_translations(&x_min, &x_maj, &[1.0], &mut rng).unwrap();
        assert_eq!(t.row(0), &[0.5, 0.0]);
        assert_eq!(t.row(1), &[0.0, 0.0]);
    }

    #[test]
    fn translations_accumulate_over_spheres() {
        let x_min = Matrix::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let x_maj = Matrix::from_rows(&[[0.5, 0.5]]).unwrap();
        let radii = [1.0, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let both = compute_translations(&x_min, &x_maj, &radii, &mut rng).unwrap();
        let a = compute_translations(&x_min.select_rows(&[0]), &x_maj, &radii[..1], &mut rng).unwrap();
        let b = compute_translations(&x_min.select_rows(&[1]), &x_maj, &radii[1..], &mut rng).unwrap();
        for k in 0..2 {
            assert!((both.get(0, k) - a.get(0, k) - b.get(0, k)).abs() < 1e-15);
        }
        // d = sqrt(0.5); each sphere pushes by (1 - d) / d along its own ray
        let d = 0.5f64.sqrt();
        let s = (1.0 - d) / d;
        assert!((both.get(0, 0) - (s * 0.5 + s * -0.5)).abs() < 1e-15);
        assert!((both.get(0, 1) - (s * 0.5 * 2.0)).abs() < 1e-15);
    }

    #[test]
    fn coincident_majority_moves_to_surface() {
        let x_min = Matrix::from_rows(&[[1.0, 1.0, 1.0]]).unwrap();
        let x_maj = Matrix::from_rows(&[[1.0, 1.0, 1.0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = compute_translations(&x_min, &x_maj, &[0.7], &mut rng).unwrap();
        let norm = t.row(0).iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 0.7).abs() < 1e-12);
    }

    #[test]
    fn allocation_examples() {
        assert_eq!(allocate_counts(&[1.0, 1.0], 6, 2).unwrap().counts, vec![2, 2]);
        assert_eq!(allocate_counts(&[1.0, 3.0], 6, 2).unwrap().counts, vec![3, 1]);
        assert_eq!(allocate_counts(&[1.0, 3.0], 2, 2).unwrap().counts, vec![0, 0]);
        assert_eq!(allocate_counts(&[1.0, 0.0], 6, 2), Err(Error::ZeroRadius(1)));
        assert!(allocate_counts(&[1.0], 1, 2).is_err());
    }

    #[test]
    fn allocation_floor_shortfall_is_kept() {
        let plan = allocate_counts(&[1.0, 1.0, 1.0], 5, 3).unwrap();
        assert_eq!(plan.counts, vec![0, 0, 0]);
        let plan = allocate_counts(&[1.0, 2.0, 4.0], 10, 3).unwrap();
        // weights 4/7, 2/7, 1/7 of 7
        assert_eq!(plan.counts, vec![4, 2, 1]);
    }
}
