mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbccr_core::stats::DEFAULT_ALPHA;
use rbccr_core::{auc, potential, potential_batch, sphere_radius, wilcoxon_one_sided, Matrix, PotentialParams};
use support::*;

#[test]
fn potential_matches_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let m = rng.random_range(1..=8);
        let n = rng.random_range(1..=40);
        let gamma = rng.random_range(0.1..10.0);
        let rows = gaussian_rows(&mut rng, n, &vec![0.0; m], 1.5);
        let x: Vec<f64> = (0..m).map(|_| rng.random_range(-3.0..3.0)).collect();
        let got = potential(
            &x,
            &Matrix::from_rows(&rows).unwrap(),
            PotentialParams::new(gamma).unwrap(),
        )
        .unwrap();
        worst = worst.max((got - potential_oracle(&x, &rows, gamma)).abs());
    }
    assert!(worst < 1e-12, "max error {worst}");
}

#[test]
fn batch_potential_matches_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let coll = Matrix::from_rows(&gaussian_rows(&mut rng, 300, &[0.0; 4], 1.0)).unwrap();
    let pts = Matrix::from_rows(&gaussian_rows(&mut rng, 400, &[0.5; 4], 1.0)).unwrap();
    let params = PotentialParams::new(0.8).unwrap();
    let batch = potential_batch(&pts, &coll, params).unwrap();
    for (p, b) in pts.iter_rows().zip(&batch) {
        assert!((potential(p, &coll, params).unwrap() - b).abs() < 1e-12);
    }
}

#[test]
fn sphere_radius_matches_continuous_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.random_range(1..=6);
        let mut d: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
        d.sort_by(f64::total_cmp);
        let energy = rng.random_range(0.05..4.0);
        let got = sphere_radius(&d, energy).unwrap();
        worst = worst.max((got - radius_simulator(&d, energy, 1e-4)).abs());
    }
    assert!(worst < 1e-3, "max deviation {worst}");
}

#[test]
fn hand_traced_radii_are_exact() {
    assert_eq!(sphere_radius(&[1.0], 0.5).unwrap(), 0.5);
    assert_eq!(sphere_radius(&[1.0, 1.5], 1.8).unwrap(), 1.4);
    assert_eq!(sphere_radius(&[1.0], 5.0).unwrap(), 1.0);
}

#[test]
fn auc_matches_pairwise_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let n = rng.random_range(2..=50);
        let mut truth: Vec<bool> = (0..n).map(|_| rng.random_bool(0.4)).collect();
        truth[0] = true;
        truth[1] = false;
        // coarse grid forces ties
        let scores: Vec<f64> = (0..n).map(|_| rng.random_range(0..8) as f64 / 4.0).collect();
        assert_eq!(auc(&truth, &scores, &true).unwrap(), auc_pairwise(&truth, &scores));
    }
}

#[test]
fn wilcoxon_exact_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let n = rng.random_range(5..=12);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0..10) as f64 / 10.0).collect();
        let a: Vec<f64> = b.iter().map(|v| v + rng.random_range(-4..=4) as f64 / 10.0).collect();
        let nonzero = a.iter().zip(&b).filter(|(x, y)| x != y).count();
        if nonzero < 5 {
            continue;
        }
        let got = wilcoxon_one_sided(&a, &b, DEFAULT_ALPHA).unwrap().p_value;
        let want = wilcoxon_enumeration(&a, &b);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}
