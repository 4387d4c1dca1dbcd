use std::io::Write;

use serde::Serialize;

use super::rates::Regime;

/// Monte Carlo moment at one resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub n: usize,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Model rate `E(1 ∧ |Z_{1/n}|^q)`-shape at this `n`, constant set to 1.
    pub theory_value: f64,
}

/// Per-resolution estimates with the fitted log-log decay rate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_paths: usize,
    pub per_n: Vec<RatePoint>,
    /// `None` when every estimate is exactly zero.
    pub fitted_slope: Option<f64>,
    pub intercept: Option<f64>,
    pub slope_ci: Option<[f64; 2]>,
    pub theory_slope: f64,
    pub regime: Regime,
    /// A `log n` factor accompanies the theory rate (critical regime).
    pub log_factor: bool,
    pub exact_zero: bool,
}

/// Fitted slopes may undershoot the theory exponent by this much.
pub const SLOPE_SLACK: f64 = 0.15;

impl RateReport {
    /// No consecutive pair has an increase with disjoint confidence intervals.
    pub fn is_monotone_within_ci(&self) -> bool {
        self.per_n.windows(2).all(|w| w[1].ci_low <= w[0].ci_high)
    }

    /// Fitted slope is at least `theory_slope - SLOPE_SLACK` (vacuous for the
    /// exact-zero case).
    pub fn meets_theory(&self) -> bool {
        match self.fitted_slope {
            Some(s) => s >= self.theory_slope - SLOPE_SLACK,
            None => self.exact_zero,
        }
    }

    /// CSV with header `n,estimate,ci_low,ci_high,theory_value`.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        write_points_csv(&self.per_n, w)
    }

    /// Two columns `n estimate`, whitespace separated, for plotting.
    pub fn write_plot_data<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for pt in &self.per_n {
            writeln!(w, "{} {:e}", pt.n, pt.estimate)?;
        }
        Ok(())
    }
}

/// CSV with header `n,estimate,ci_low,ci_high,theory_value`.
pub fn write_points_csv<W: Write>(points: &[RatePoint], mut w: W) -> std::io::Result<()> {
    writeln!(w, "n,estimate,ci_low,ci_high,theory_value")?;
    for pt in points {
        writeln!(
            w,
            "{},{:e},{:e},{:e},{:e}",
            pt.n, pt.estimate, pt.ci_low, pt.ci_high, pt.theory_value
        )?;
    }
    Ok(())
}
