//! Deterministic test signals.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::series::TimeSeries;

fn sampled(n: usize, span: f64, f: impl Fn(f64) -> f64) -> TimeSeries {
    assert!(n >= 2, "need at least two samples");
    let times: Vec<f64> = (0..n).map(|i| span * i as f64 / (n - 1) as f64).collect();
    let values = times.iter().map(|&t| f(t)).collect();
    TimeSeries::new(times, values).expect("generated series is valid")
}

/// `sin(t)` over `periods` full periods starting at `t = 0`.
pub fn sine(n: usize, periods: f64) -> TimeSeries {
    sampled(n, periods * 2.0 * PI, f64::sin)
}

/// `sin(10 t) + sin(t)` over four periods of the slow tone.
pub fn two_tone(n: usize) -> TimeSeries {
    sampled(n, 8.0 * PI, |t| (10.0 * t).sin() + t.sin())
}

/// Triangle wave between -1 and 1 with `quarter` samples per quarter period.
pub fn triangle(n: usize, quarter: usize) -> TimeSeries {
    let q = quarter.max(1) as f64;
    let values = (0..n)
        .map(|i| {
            let p = (i as f64 / q) % 4.0;
            if p <= 1.0 {
                p
            } else if p <= 3.0 {
                2.0 - p
            } else {
                p - 4.0
            }
        })
        .collect();
    TimeSeries::from_values(values).expect("generated series is valid")
}

/// Gaussian random walk on unit time steps.
pub fn random_walk(n: usize, seed: u64) -> TimeSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = Normal::new(0.0, 1.0).expect("valid normal");
    let mut level = 0.0;
    let values = (0..n)
        .map(|_| {
            level += step.sample(&mut rng);
            level
        })
        .collect();
    TimeSeries::from_values(values).expect("generated series is valid")
}

/// Two sinusoids (periods 40 and 400 samples) riding on a gentle random walk.
pub fn mixed(n: usize, seed: u64) -> TimeSeries {
    let walk = random_walk(n, seed);
    let values = walk
        .iter()
        .map(|(t, w)| (2.0 * PI * t / 40.0).sin() + 2.0 * (2.0 * PI * t / 400.0).sin() + 0.05 * w)
        .collect();
    walk.with_values(values).expect("generated series is valid")
}

/// Indices whose time lies at least `margin` (a fraction of the total span)
/// away from both ends.
pub fn interior_indices(series: &TimeSeries, margin: f64) -> Vec<usize> {
    let (t0, _) = series.first();
    let (t1, _) = series.last();
    let pad = margin * (t1 - t0);
    series
        .times()
        .iter()
        .enumerate()
        .filter(|(_, &t)| t >= t0 + pad && t <= t1 - pad)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_walk_is_reproducible() {
        assert_eq!(random_walk(100, 3), random_walk(100, 3));
        assert_ne!(random_walk(100, 3), random_walk(100, 4));
    }

    #[test]
    fn triangle_shape() {
        let t = triangle(9, 2);
        assert_eq!(
            t.values(),
            &[0.0, 0.5, 1.0, 0.5, 0.0, -0.5, -1.0, -0.5, 0.0]
        );
    }
}
