mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbccr_core::matrix::euclidean;
use rbccr_core::*;
use support::*;

fn fixture(seed: u64, n_min: usize, n_maj: usize, m: usize) -> (Matrix, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min = gaussian_rows(&mut rng, n_min, &vec![0.0; m], 1.0);
    let maj = gaussian_rows(&mut rng, n_maj, &vec![0.7; m], 1.2);
    (Matrix::from_rows(&maj).unwrap(), Matrix::from_rows(&min).unwrap())
}

#[test]
fn guided_samples_respect_region_and_ball() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut violations = 0;
    for call in 0..1000 {
        let m = rng.random_range(1..=4);
        let n_min = rng.random_range(2..=15);
        let rows = gaussian_rows(&mut rng, n_min, &vec![0.0; m], 1.0);
        let x_min = Matrix::from_rows(&rows).unwrap();
        let seed = rows[rng.random_range(0..n_min)].clone();
        let radius = rng.random_range(0.05..2.0);
        let gamma = rng.random_range(0.3..3.0);
        let region = SamplingRegion::ALL[call % 4];
        let cfg = GuidedSamplingConfig::new(rng.random_range(1..=60), region, gamma).unwrap();
        let draw = guided_draw(&seed, radius, &x_min, &cfg, 20, &mut rng).unwrap();
        for s in draw.samples.iter_rows() {
            if s == seed.as_slice() {
                continue;
            }
            if euclidean(s, &seed) > radius * (1.0 + 1e-12) {
                violations += 1;
            }
            if let Some(b) = draw.bounds {
                let z = potential_oracle(s, &rows, gamma);
                let ok = match region {
                    SamplingRegion::L => z <= b.bound_l + 1e-9,
                    SamplingRegion::H => z >= b.bound_h - 1e-9 && z > b.bound_l - 1e-9,
                    SamplingRegion::E => z > b.bound_l - 1e-9 && z < b.bound_h + 1e-9,
                    SamplingRegion::LEH => true,
                };
                if !ok {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn unfiltered_sampling_keeps_every_candidate() {
    let x_min = Matrix::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let cfg = GuidedSamplingConfig::new(30, SamplingRegion::LEH, 1.0).unwrap();
    let draw = guided_draw(&[0.0, 0.0], 0.5, &x_min, &cfg, 5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(draw.kept.rows(), 31);
    assert_eq!(draw.kept.row(0), &[0.0, 0.0]);
    assert!(draw.bounds.is_none());
}

#[test]
fn ball_draws_are_uniform_by_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let n = 100_000;
    let inside = (0..n)
        .filter(|_| euclidean(&sample_in_ball(&[0.0, 0.0], 1.0, &mut rng), &[0.0, 0.0]) < 0.5)
        .count();
    let frac = inside as f64 / n as f64;
    assert!((frac - 0.25).abs() < 0.01, "fraction {frac}");
}

#[test]
fn high_region_sits_at_higher_potential_than_low() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let rows = gaussian_rows(&mut rng, 30, &[0.0, 0.0], 1.0);
    let x_min = Matrix::from_rows(&rows).unwrap();
    let mean_potential = |region| {
        let cfg = GuidedSamplingConfig::new(100, region, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut total = 0.0;
        let mut count = 0.0;
        for r in &rows {
            let s = guided_sample(r, 1.0, &x_min, &cfg, 50, &mut rng).unwrap();
            for p in s.iter_rows() {
                total += potential_oracle(p, &rows, 1.0);
                count += 1.0;
            }
        }
        total / count
    };
    assert!(mean_potential(SamplingRegion::H) > mean_potential(SamplingRegion::L));
}

#[test]
fn leh_matches_ccr_under_shared_stream() {
    let (x_maj, x_min) = fixture(24, 15, 60, 3);
    let cfg = ResamplerConfig {
        region: SamplingRegion::LEH,
        gamma: 7.5,
        energy: 2.5,
        candidates: 40,
        ..ResamplerConfig::new(Method::RbCcr)
    };
    let a = rb_ccr_resample(&x_maj, &x_min, &cfg, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
    let b = ccr_resample(&x_maj, &x_min, 2.5, 40, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rb_ccr_output_shape() {
    let (x_maj, x_min) = fixture(25, 12, 70, 4);
    for region in SamplingRegion::ALL {
        let cfg = ResamplerConfig {
            region,
            ..ResamplerConfig::new(Method::RbCcr)
        };
        let out = rb_ccr_resample(&x_maj, &x_min, &cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let radii = out.radii.clone().unwrap();
        let plan = allocate_counts(&radii, 70, 12).unwrap();
        assert_eq!(out.majority.rows(), 70);
        assert_eq!(out.minority, x_min);
        assert_eq!(out.synthetic.rows(), plan.total());
        assert!(plan.total() <= 58);
        for (s, &i) in out.synthetic.iter_rows().zip(&out.synthetic_source) {
            assert!(euclidean(s, x_min.row(i)) <= radii[i] * (1.0 + 1e-12));
        }
        let ratio = 70.0 / (12 + plan.total()) as f64;
        assert_eq!(out.achieved_ratio, ratio);
        let again = rb_ccr_resample(&x_maj, &x_min, &cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(out, again);
    }
}

#[test]
fn baselines_balance_the_classes() {
    let (x_maj, x_min) = fixture(26, 10, 40, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ros = random_oversample(&x_maj, &x_min, &mut rng).unwrap();
    assert_eq!(ros.synthetic.rows(), 30);
    for (s, &i) in ros.synthetic.iter_rows().zip(&ros.synthetic_source) {
        assert_eq!(s, x_min.row(i));
    }
    let rus = random_undersample(&x_maj, &x_min, &mut rng).unwrap();
    assert_eq!(rus.majority.rows(), 10);
    assert!(rus.majority_source.windows(2).all(|w| w[0] < w[1]));
    let smote = smote_resample(&x_maj, &x_min, 3, &mut rng).unwrap();
    assert_eq!(smote.synthetic.rows(), 30);
    assert_eq!(smote.achieved_ratio, 1.0);
    // every SMOTE point lies on a segment to one of the source's 3 neighbours
    for (s, &a) in smote.synthetic.iter_rows().zip(&smote.synthetic_source) {
        let xa = x_min.row(a);
        let near = rbccr_core::matrix::sorted_by_distance(xa, &x_min);
        let on_segment = near.iter().skip(1).take(3).any(|&(b, _)| {
            let xb = x_min.row(b);
            let u = if xb[0] != xa[0] {
                (s[0] - xa[0]) / (xb[0] - xa[0])
            } else {
                (s[1] - xa[1]) / (xb[1] - xa[1])
            };
            (-1e-9..=1.0 + 1e-9).contains(&u) && (0..2).all(|k| (xa[k] + u * (xb[k] - xa[k]) - s[k]).abs() < 1e-9)
        });
        assert!(on_segment);
    }
}

#[test]
fn unscaled_data_is_refused_for_distance_methods() {
    let (x_maj, x_min) = fixture(27, 5, 15, 2);
    let x = x_maj.vstack(&x_min).unwrap();
    let labels = (0..20)
        .map(|i| if i < 15 { "neg" } else { "pos" }.to_string())
        .collect();
    let d = Dataset::new("u", vec!["a".into(), "b".into()], x, labels).unwrap();
    let cfg = ResamplerConfig::new(Method::RbCcr);
    assert_eq!(resample_dataset(&d, &cfg), Err(Error::NotStandardized));
    assert!(resample_dataset(
        &d,
        &ResamplerConfig {
            allow_unscaled: true,
            ..cfg
        }
    )
    .is_ok());
    assert!(resample_dataset(&standardize(&d).0, &cfg).is_ok());
    assert!(resample_dataset(&d, &ResamplerConfig::new(Method::Ros)).is_ok());
}
