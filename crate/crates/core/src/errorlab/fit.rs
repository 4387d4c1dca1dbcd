use rand::Rng;
use serde::Serialize;

use super::summation::quantile_sorted;
use crate::error::{argument, Result};
use crate::rng::aux_stream;

/// Least-squares line through `(log(1/n), log value)`; a positive slope is a
/// decay rate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_ci: [f64; 2],
}

const RESIDUAL_RESAMPLES: usize = 2000;
const FIT_SEED: u64 = 0x0f17_5eed;

/// Ordinary least squares `y = intercept + slope·x`.
pub fn ols(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Slope of `log(value)` against `log(1/n)`, with a 95% residual-bootstrap
/// interval.
pub fn fit_rate(points: &[(usize, f64)]) -> Result<RateFit> {
    if points.len() < 3 {
        return Err(argument(format!("rate fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(n, v)) = points.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(argument(format!("nonpositive value {v} at n={n}")));
    }
    if points.iter().any(|&(n, _)| n == 0) {
        return Err(argument("resolution n must be positive"));
    }
    let x: Vec<f64> = points.iter().map(|&(n, _)| -(n as f64).ln()).collect();
    let y: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    if x.iter().all(|&xi| xi == x[0]) {
        return Err(argument("rate fit needs at least two distinct resolutions"));
    }
    let (slope, intercept) = ols(&x, &y);
    let fitted: Vec<f64> = x.iter().map(|xi| intercept + slope * xi).collect();
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();

    let mut rng = aux_stream(FIT_SEED, points.len() as u64);
    let mut slopes = Vec::with_capacity(RESIDUAL_RESAMPLES);
    let mut y_star = vec![0.0; y.len()];
    for _ in 0..RESIDUAL_RESAMPLES {
        for (ys, f) in y_star.iter_mut().zip(&fitted) {
            *ys = f + residuals[rng.random_range(0..residuals.len())];
        }
        slopes.push(ols(&x, &y_star).0);
    }
    slopes.sort_by(f64::total_cmp);
    Ok(RateFit {
        slope,
        intercept,
        slope_ci: [quantile_sorted(&slopes, 0.025), quantile_sorted(&slopes, 0.975)],
    })
}
