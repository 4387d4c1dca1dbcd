use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::inequalities::{
    check_bernstein, check_dissipativity, fractional_energy, BernsteinReport, CheckStatus, DissipativityReport,
    DEFAULT_C_FLOOR,
};
use super::littlewood_paley::{besov_terms, dyadic_block, BesovTerm};
use super::torus::band_limited_random;
use super::{DEFAULT_GRID_SIZE, DEFAULT_PERIOD_SCALE};
use crate::error::{argument, Result};

/// Largest allowed `max/min` of the Bernstein ratios across `j`.
pub const MAX_RATIO_SPREAD: f64 = 10.0;
/// Relative agreement required between the `p = 2` dissipativity integral and
/// its spectral-side value.
pub const PLANCHEREL_TOL: f64 = 1e-8;

/// A batch of inequality checks on random band-limited functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub functions: usize,
    pub band: f64,
    pub p: Vec<f64>,
    pub alpha: Vec<f64>,
    pub j_min: i32,
    pub j_max: i32,
    pub grid_size: usize,
    pub period_scale: f64,
    pub c_floor: f64,
    /// Smoothness index of the Besov norms reported per function.
    pub smoothness: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            functions: 20,
            band: 120.0,
            p: vec![2.0, 4.0],
            alpha: vec![0.8, 1.5],
            j_min: 3,
            j_max: 7,
            grid_size: DEFAULT_GRID_SIZE,
            period_scale: DEFAULT_PERIOD_SCALE,
            c_floor: DEFAULT_C_FLOOR,
            smoothness: 0.5,
        }
    }
}

/// Both checks for one `(function, p, α)` triple.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteCase {
    pub function: usize,
    pub p: f64,
    pub alpha: f64,
    pub bernstein: BernsteinReport,
    pub dissipativity: DissipativityReport,
    /// Worst relative gap, over the non-empty blocks, between `∫ g·Lg dx` and
    /// `-∫|(-Δ)^{α/4} g|²`; only computed for `p = 2`.
    pub plancherel_error: Option<f64>,
    /// `B^s_{p,p}` norm of the function at `s = smoothness`, with its blocks.
    pub besov_norm: f64,
    pub besov_terms: Vec<BesovTerm>,
}

impl SuiteCase {
    pub fn passes(&self) -> bool {
        self.bernstein.status == CheckStatus::Pass
            && self.bernstein.spread().is_some_and(|s| s <= MAX_RATIO_SPREAD)
            && self.dissipativity.nonpositive
            && self.plancherel_error.is_none_or(|e| e <= PLANCHEREL_TOL)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub cases: Vec<SuiteCase>,
    pub min_bernstein_ratio: f64,
    pub max_ratio_spread: f64,
    pub max_dissipativity_integral: f64,
    pub max_plancherel_error: f64,
    pub passed: bool,
}

/// Runs the Bernstein and dissipativity checks over every function and every
/// `(p, α)` pair. Functions are processed in parallel; the result does not
/// depend on the thread count.
pub fn inequality_suite(config: &SuiteConfig, seed: u64) -> Result<SuiteReport> {
    if config.functions == 0 || config.p.is_empty() || config.alpha.is_empty() {
        return Err(argument("the suite needs at least one function, one p and one alpha"));
    }
    if config.j_min < 0 || config.j_max < config.j_min {
        return Err(argument(format!("invalid block range {}..={}", config.j_min, config.j_max)));
    }
    let per_function: Vec<Vec<SuiteCase>> = (0..config.functions)
        .into_par_iter()
        .map(|i| {
            let f = band_limited_random(config.grid_size, config.period_scale, config.band, seed, i as u64)?;
            let mut cases = Vec::new();
            for &p in &config.p {
                let (terms, norm) = besov_terms(&f, config.smoothness, p)?;
                for &alpha in &config.alpha {
                    let range = config.j_min..=config.j_max;
                    let bernstein = check_bernstein(&f, alpha, p, range.clone(), config.c_floor)?;
                    let dissipativity = check_dissipativity(&f, alpha, p, range, config.c_floor)?;
                    let plancherel_error = if p == 2.0 {
                        let mut worst = 0.0_f64;
                        for row in dissipativity.rows.iter().filter(|r| r.ratio.is_some()) {
                            let g = dyadic_block(&f, row.j)?.block;
                            let energy = fractional_energy(&g, alpha);
                            if energy > 0.0 {
                                worst = worst.max((row.integral + energy).abs() / energy);
                            }
                        }
                        Some(worst)
                    } else {
                        None
                    };
                    cases.push(SuiteCase {
                        function: i,
                        p,
                        alpha,
                        bernstein,
                        dissipativity,
                        plancherel_error,
                        besov_norm: norm,
                        besov_terms: terms.clone(),
                    });
                }
            }
            Ok(cases)
        })
        .collect::<Result<_>>()?;
    let cases: Vec<SuiteCase> = per_function.into_iter().flatten().collect();

    let min_bernstein_ratio = cases
        .iter()
        .filter_map(|c| c.bernstein.min_ratio)
        .fold(f64::INFINITY, f64::min);
    let max_ratio_spread = cases
        .iter()
        .filter_map(|c| c.bernstein.spread())
        .fold(0.0_f64, f64::max);
    let max_dissipativity_integral = cases
        .iter()
        .flat_map(|c| c.dissipativity.rows.iter().map(|r| r.integral))
        .fold(f64::NEG_INFINITY, f64::max);
    let max_plancherel_error = cases
        .iter()
        .filter_map(|c| c.plancherel_error)
        .fold(0.0_f64, f64::max);
    let passed = cases.iter().all(SuiteCase::passes);
    Ok(SuiteReport {
        cases,
        min_bernstein_ratio,
        max_ratio_spread,
        max_dissipativity_integral,
        max_plancherel_error,
        passed,
    })
}
