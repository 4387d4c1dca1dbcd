use rayon::prelude::*;
use serde::Serialize;

use super::fit::fit_rate;
use super::rates::{regime_of, Regime};
use super::report::RatePoint;
use super::summation::pairwise_mean;
use crate::error::{argument, Result};
use crate::noise::{unit_variate, LevyModel};
use crate::rng;

/// Samples are drawn in blocks of this size, block `b` from stream `(seed, b)`.
const BLOCK: usize = 4096;

/// Monte Carlo estimate of `E(1 ∧ |Z_{1/n}|^p)` with a normal 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// `E(1 ∧ |Z_{1/n}|^p)` from `samples` draws `n^{-1/α}·Z_1`.
///
/// The same seed reuses the same unit-time draws for every `n`, so estimates
/// across resolutions share common random numbers.
pub fn empirical_truncated_moment(
    model: &LevyModel,
    p: f64,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    if samples < 10_000 {
        return Err(argument(format!("need at least 10^4 samples, got {samples}")));
    }
    if n == 0 || !(p > 0.0) {
        return Err(argument("n and p must be positive"));
    }
    let dim = model.dim();
    let h = (n as f64).powf(-1.0 / model.alpha());
    let blocks = samples.div_ceil(BLOCK);
    let values: Vec<f64> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut rng = rng::stream(seed, b as u64);
            let count = BLOCK.min(samples - b * BLOCK);
            let mut z = vec![0.0; dim];
            (0..count)
                .map(|_| {
                    unit_variate(model, &mut rng, &mut z);
                    let norm = h * z.iter().map(|x| x * x).sum::<f64>().sqrt();
                    norm.powf(p).min(1.0)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mean = pairwise_mean(&values);
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (samples - 1) as f64;
    let se = (var / samples as f64).sqrt();
    Ok(MomentEstimate {
        n,
        p,
        samples,
        estimate: mean,
        std_error: se,
        ci_low: mean - 1.96 * se,
        ci_high: mean + 1.96 * se,
    })
}

/// Truncated moments over a range of resolutions with the fitted decay.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentStudy {
    pub alpha: f64,
    pub p: f64,
    pub regime: Regime,
    pub theory_slope: f64,
    pub fitted_slope: f64,
    pub slope_ci: [f64; 2],
    pub points: Vec<RatePoint>,
    /// `n·estimate / log n`, which stays bounded in the critical regime.
    pub compensated: Vec<f64>,
    /// Tail mass `T` of the model, `P(|Z_1| > x) ~ T x^{-α}`; zero for the
    /// Gaussian limit.
    pub tail_mass: f64,
}

/// Largest allowed gap between fitted and model exponents.
pub const MOMENT_SLOPE_TOL: f64 = 0.05;

impl MomentStudy {
    pub fn slope_matches(&self) -> bool {
        (self.fitted_slope - self.theory_slope).abs() <= MOMENT_SLOPE_TOL
    }

    /// Band for the compensated series in the critical regime: the estimate
    /// behaves like `T·log n / n` with `T` the tail mass of `Z_1`, so the
    /// series must stay within `[T/2, 2T]`.
    pub fn critical_band(&self) -> (f64, f64) {
        (0.5 * self.tail_mass, 2.0 * self.tail_mass)
    }

    pub fn compensated_within_band(&self) -> bool {
        let (lo, hi) = self.critical_band();
        self.tail_mass > 0.0 && self.compensated.iter().all(|&c| c >= lo && c <= hi)
    }

    /// The property appropriate to the regime.
    pub fn passes(&self) -> bool {
        match self.regime {
            Regime::Critical => self.compensated_within_band(),
            _ => self.slope_matches(),
        }
    }
}

pub fn truncated_moment_study(
    model: &LevyModel,
    p: f64,
    n_list: &[usize],
    samples: usize,
    seed: u64,
) -> Result<MomentStudy> {
    let alpha = model.alpha();
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let est = empirical_truncated_moment(model, p, n, samples, seed)?;
        let theory_value = if n >= 2 {
            super::rates::truncated_moment_rate(alpha, p, n)?.0
        } else {
            1.0
        };
        points.push(RatePoint {
            n,
            estimate: est.estimate,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            theory_value,
        });
    }
    let fit = fit_rate(&points.iter().map(|pt| (pt.n, pt.estimate)).collect::<Vec<_>>())?;
    let regime = regime_of(alpha, p);
    let theory_slope = if alpha >= 2.0 { p / 2.0 } else { (p / alpha).min(1.0) };
    let compensated = points
        .iter()
        .map(|pt| pt.n as f64 * pt.estimate / (pt.n as f64).ln())
        .collect();
    Ok(MomentStudy {
        alpha,
        p,
        regime,
        theory_slope,
        fitted_slope: fit.slope,
        slope_ci: fit.slope_ci,
        points,
        compensated,
        tail_mass: model.tail_mass().unwrap_or(0.0),
    })
}
