//! Independent reference implementations used as test oracles. Shared with
//! the acceptance suite in the cli crate.
#![allow(dead_code)]

use rand::Rng;

/// Potential by direct summation with an explicit square root.
pub fn potential_oracle(x: &[f64], collection: &[Vec<f64>], gamma: f64) -> f64 {
    collection
        .iter()
        .map(|p| {
            let d = x.iter().zip(p).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            (-(d / gamma).powi(2)).exp()
        })
        .sum()
}

/// Grows the radius in steps of `eps`, paying `1 + #{d <= r}` energy per unit
/// of radius, and stops at the farthest neighbour.
pub fn radius_simulator(distances: &[f64], energy: f64, eps: f64) -> f64 {
    let max_d = distances.iter().copied().fold(0.0, f64::max);
    let mut r = 0.0;
    let mut e = energy;
    loop {
        let rate = 1.0 + distances.iter().filter(|&&d| d <= r).count() as f64;
        let step = eps.min(max_d - r);
        if step <= 0.0 {
            return max_d;
        }
        let cost = rate * step;
        if cost >= e {
            return r + e / rate;
        }
        e -= cost;
        r += step;
    }
}

/// AUC as the fraction of (minority, majority) pairs ordered correctly, ties half.
pub fn auc_pairwise(truth: &[bool], scores: &[f64]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &ti) in truth.iter().enumerate() {
        if !ti {
            continue;
        }
        for (j, &tj) in truth.iter().enumerate() {
            if tj {
                continue;
            }
            pairs += 1.0;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

/// Rank of each value by counting: 1 + #smaller + (#equal others) / 2.
pub fn counting_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let smaller = values.iter().filter(|w| *w < v).count() as f64;
            let equal = values.iter().enumerate().filter(|(j, w)| *j != i && *w == v).count() as f64;
            1.0 + smaller + equal / 2.0
        })
        .collect()
}

/// One-sided signed-rank p-value by enumerating every sign assignment.
pub fn wilcoxon_enumeration(a: &[f64], b: &[f64]) -> f64 {
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = counting_ranks(&abs);
    let observed: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let n = diffs.len();
    let mut hits = 0u64;
    for mask in 0u64..(1 << n) {
        let w: f64 = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| ranks[k]).sum();
        if w >= observed - 1e-9 {
            hits += 1;
        }
    }
    hits as f64 / (1u64 << n) as f64
}

/// Rows of standard normal noise shifted by `center`.
pub fn gaussian_rows<R: Rng>(rng: &mut R, n: usize, center: &[f64], scale: f64) -> Vec<Vec<f64>> {
    use rand_distr::StandardNormal;
    (0..n)
        .map(|_| {
            center
                .iter()
                .map(|c| c + scale * rng.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect()
}
