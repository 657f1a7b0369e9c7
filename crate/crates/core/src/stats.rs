//! Aggregation of repeated seeded trials: mean, sample standard
//! deviation, and the 95% normal-approximation confidence half-width.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// z for a two-sided 95% interval. The normal approximation is used
/// instead of Student-t: at the run counts this project works with
/// (hundreds to a thousand) the difference is negligible.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialStats<T> {
    pub mean: T,
    /// Sample standard deviation (n - 1 in the denominator).
    pub std_dev: T,
    /// 1.96 · std_dev / √runs.
    pub ci95: T,
    pub runs: usize,
}

impl<T: Scalar> TrialStats<T> {
    /// Needs at least 2 samples; the confidence interval is undefined
    /// below that.
    pub fn from_samples(samples: &[T]) -> Self {
        assert!(samples.len() >= 2, "need at least 2 samples");
        let r = T::from_count(samples.len());
        let mean = samples.iter().fold(T::zero(), |a, &x| a + x) / r;
        let ss = samples.iter().fold(T::zero(), |a, &x| {
            let d = x - mean;
            a + d * d
        });
        let std_dev = (ss / (r - T::one())).sqrt();
        Self {
            mean,
            std_dev,
            ci95: T::from_f64c(Z_95) * std_dev / r.sqrt(),
            runs: samples.len(),
        }
    }

    /// Run count a (std_dev, ci95) pair implies under ci = z·σ/√R.
    /// Used to cross-check published aggregate rows.
    pub fn implied_runs(std_dev: T, ci95: T) -> T {
        let root = T::from_f64c(Z_95) * std_dev / ci95;
        root * root
    }
}
