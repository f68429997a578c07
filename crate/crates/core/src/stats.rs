//! Small statistics helpers shared by the harness and the analysis code.

use serde::{Deserialize, Serialize};

/// Upper 2.5% point of the standard normal.
pub const Z_95_TWO_SIDED: f64 = 1.959_963_984_540_054;
/// Upper 5% point of the standard normal.
pub const Z_95_ONE_SIDED: f64 = 1.644_853_626_951_472_2;

/// Sample mean with a normal-approximation 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatchStats {
    pub n_episodes: usize,
    pub mean: f64,
    pub ci95_halfwidth: f64,
}

impl BatchStats {
    /// Sums in the order given; callers pass samples ordered by episode
    /// index so the result does not depend on scheduling.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return BatchStats { n_episodes: 0, mean: 0.0, ci95_halfwidth: 0.0 };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let ci = if n < 2 {
            0.0
        } else {
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            Z_95_TWO_SIDED * (var / n as f64).sqrt()
        };
        BatchStats { n_episodes: n, mean, ci95_halfwidth: ci }
    }

    pub fn std_error(&self) -> f64 {
        self.ci95_halfwidth / Z_95_TWO_SIDED
    }

    /// `self.mean - self.ci > other.mean + other.ci`.
    pub fn ci_above(&self, other: &BatchStats) -> bool {
        self.mean - self.ci95_halfwidth > other.mean + other.ci95_halfwidth
    }

    /// z statistic of `self.mean - other.mean` (unpooled variances).
    pub fn z_versus(&self, other: &BatchStats) -> f64 {
        let se = (self.std_error().powi(2) + other.std_error().powi(2)).sqrt();
        let diff = self.mean - other.mean;
        if se == 0.0 {
            if diff == 0.0 { 0.0 } else { diff.signum() * f64::INFINITY }
        } else {
            diff / se
        }
    }
}

/// Ordinary least squares fit `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    LinearFit { slope, intercept, r_squared }
}
