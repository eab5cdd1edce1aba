//! Synthetic fixtures for the resampling benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rbccr_core::Matrix;

/// Gaussian classes in `m` dimensions: `n / 5` minority rows at the origin,
/// the rest shifted by 0.5 along every axis.
pub fn gaussian_classes(n: usize, m: usize, seed: u64) -> (Matrix, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_min = n / 5;
    let mut draw = |rows: usize, shift: f64| {
        let data = (0..rows * m)
            .map(|_| shift + rng.sample::<f64, _>(StandardNormal))
            .collect();
        Matrix::from_vec(rows, m, data).expect("shape matches")
    };
    let x_min = draw(n_min, 0.0);
    let x_maj = draw(n - n_min, 0.5);
    (x_maj, x_min)
}
