//! Histogram of planning step sizes relative to the Newton step.
//!
//! A ratio `r = mu / mu*` is plotted at `t = sign(s) sqrt(2 log10(1 + |s|))`
//! with `s = r - 1`, the inverse of `s = sign(t) (10^(t^2 / 2) - 1)`. This
//! spreads ratios over many orders of magnitude on `t in [-2, 2]`.

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

pub const T_RANGE: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` uniformly spaced edges from `-2` to `2`.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Samples with `t < -2`.
    pub underflow: u64,
    /// Samples with `t > 2`.
    pub overflow: u64,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }
}

pub fn transform(ratio: f64) -> f64 {
    let s = ratio - 1.0;
    if s == 0.0 {
        return 0.0;
    }
    s.signum() * (2.0 * s.abs().ln_1p() / std::f64::consts::LN_10).sqrt()
}

pub fn inverse_transform(t: f64) -> f64 {
    1.0 + t.signum() * (10f64.powf(0.5 * t * t) - 1.0)
}

pub fn build_histogram(ratios: &[f64], bins: usize) -> Result<Histogram> {
    if bins < 3 {
        return Err(BenchError::Config(format!(
            "histogram needs at least 3 bins, got {bins}"
        )));
    }
    let width = 2.0 * T_RANGE / bins as f64;
    let edges = (0..=bins).map(|k| -T_RANGE + k as f64 * width).collect();
    let mut h = Histogram {
        edges,
        counts: vec![0; bins],
        underflow: 0,
        overflow: 0,
    };
    for &ratio in ratios {
        let t = transform(ratio);
        if t > T_RANGE || t.is_nan() {
            h.overflow += 1;
        } else if t < -T_RANGE {
            h.underflow += 1;
        } else {
            let k = (((t + T_RANGE) / width) as usize).min(bins - 1);
            h.counts[k] += 1;
        }
    }
    Ok(h)
}
