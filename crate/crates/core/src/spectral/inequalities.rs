//! Numerical checks of the Bernstein-type lower bound
//! `∫ |(-Δ)^{α/4} |Δ_j f|^{p/2}|² ≥ c 2^{αj} ‖Δ_j f‖_p^p`
//! and of the dissipativity of a stable generator on dyadic blocks,
//! `∫ |Δ_j f|^{p-2} Δ_j f · L Δ_j f ≤ -c_p 2^{αj} ‖Δ_j f‖_p^p`.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::littlewood_paley::{dyadic_block, max_block};
use super::torus::PeriodicFunction;
use crate::error::{argument, domain, Result};

/// Blocks whose max norm falls below this are skipped as numerically empty.
pub const BLOCK_THRESHOLD: f64 = 1e-10;
/// Slack allowed on the sign of the dissipativity integral.
pub const NONPOSITIVITY_TOL: f64 = 1e-10;
/// Default lower floor for the Bernstein and dissipativity constants.
pub const DEFAULT_C_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// No block in the requested range carried enough mass to test.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct BernsteinRow {
    pub j: i32,
    pub lhs: f64,
    pub norm_pow: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BernsteinReport {
    pub alpha: f64,
    pub p: f64,
    pub rows: Vec<BernsteinRow>,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub c_floor: f64,
    pub status: CheckStatus,
}

impl BernsteinReport {
    /// `max/min` of the ratios across `j`.
    pub fn spread(&self) -> Option<f64> {
        Some(self.max_ratio? / self.min_ratio?)
    }
}

fn check_params(alpha: f64, p: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain(format!("alpha must lie in (0, 2], got {alpha}")));
    }
    if !(p >= 2.0 && p.is_finite()) {
        return Err(domain(format!("p must be a finite value ≥ 2, got {p}")));
    }
    Ok(())
}

/// `∫ |(-Δ)^{α/4} g|² dx = (dx/N) Σ_k |ξ_k|^α |ĝ_k|²`.
pub fn fractional_energy(g: &PeriodicFunction, alpha: f64) -> f64 {
    let spec = g.spectrum();
    let n = g.grid_size() as f64;
    spec.iter()
        .enumerate()
        .map(|(k, c)| g.frequency(k).powf(alpha) * c.norm_sqr())
        .sum::<f64>()
        * g.dx()
        / n
}

/// For each `j` in `j_range`, the ratio
/// `∫|(-Δ)^{α/4}|Δ_j f|^{p/2}|² / (2^{αj} ‖Δ_j f‖_p^p)`.
/// PASS iff the minimum ratio is at least `c_floor`.
pub fn check_bernstein(
    f: &PeriodicFunction,
    alpha: f64,
    p: f64,
    j_range: RangeInclusive<i32>,
    c_floor: f64,
) -> Result<BernsteinReport> {
    check_params(alpha, p)?;
    if *j_range.start() < 0 {
        return Err(argument("the Bernstein bound is stated for j ≥ 0"));
    }
    let mut rows = Vec::new();
    for j in j_range {
        let g = dyadic_block(f, j)?.block;
        if g.max_abs() < BLOCK_THRESHOLD {
            continue;
        }
        let h = g.with_samples(g.samples().iter().map(|x| x.abs().powf(0.5 * p)).collect());
        let lhs = fractional_energy(&h, alpha);
        let norm_pow = g.lp_norm_pow(p);
        rows.push(BernsteinRow {
            j,
            lhs,
            norm_pow,
            ratio: lhs / (2f64.powf(alpha * j as f64) * norm_pow),
        });
    }
    let min_ratio = rows.iter().map(|r| r.ratio).reduce(f64::min);
    let max_ratio = rows.iter().map(|r| r.ratio).reduce(f64::max);
    let status = match min_ratio {
        None => CheckStatus::Inconclusive,
        Some(m) if m >= c_floor => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    };
    Ok(BernsteinReport {
        alpha,
        p,
        rows,
        min_ratio,
        max_ratio,
        c_floor,
        status,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DissipativityRow {
    pub j: i32,
    /// `∫ |g|^{p-2} g · L g dx` with `g = Δ_j f`.
    pub integral: f64,
    pub norm_pow: f64,
    /// `-integral / (2^{αj} ‖g‖_p^p)`; `None` for numerically empty blocks.
    pub ratio: Option<f64>,
    pub in_range: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DissipativityReport {
    pub alpha: f64,
    pub p: f64,
    pub rows: Vec<DissipativityRow>,
    /// Every block `j ≥ -1` has integral `≤ NONPOSITIVITY_TOL`.
    pub nonpositive: bool,
    /// Smallest ratio over the requested range: the constant `c_p`.
    pub c: Option<f64>,
    pub c_floor: f64,
    pub status: CheckStatus,
}

/// Dissipativity of `L = -(-Δ)^{α/2}` on every block of `f`.
pub fn check_dissipativity(
    f: &PeriodicFunction,
    alpha: f64,
    p: f64,
    j_range: RangeInclusive<i32>,
    c_floor: f64,
) -> Result<DissipativityReport> {
    check_dissipativity_with(f, |r| r.powf(alpha), alpha, p, j_range, c_floor)
}

/// As [`check_dissipativity`] for the generator with symbol
/// `-symbol(|ξ|)`, i.e. `Re(-ψ) = symbol`.
pub fn check_dissipativity_with(
    f: &PeriodicFunction,
    symbol: impl Fn(f64) -> f64,
    alpha: f64,
    p: f64,
    j_range: RangeInclusive<i32>,
    c_floor: f64,
) -> Result<DissipativityReport> {
    check_params(alpha, p)?;
    let last = max_block(f).max(*j_range.end());
    let dx = f.dx();
    let mut rows = Vec::new();
    for j in -1..=last {
        let g = dyadic_block(f, j)?.block;
        let lg = g.apply_multiplier(|r| -symbol(r));
        let integral = g
            .samples()
            .iter()
            .zip(lg.samples())
            .map(|(&x, &l)| x.abs().powf(p - 2.0) * x * l)
            .sum::<f64>()
            * dx;
        let norm_pow = g.lp_norm_pow(p);
        let ratio = (g.max_abs() >= BLOCK_THRESHOLD).then(|| -integral / (2f64.powf(alpha * j as f64) * norm_pow));
        rows.push(DissipativityRow {
            j,
            integral,
            norm_pow,
            ratio,
            in_range: j_range.contains(&j),
        });
    }
    let nonpositive = rows.iter().all(|r| r.integral <= NONPOSITIVITY_TOL);
    let c = rows
        .iter()
        .filter(|r| r.in_range)
        .filter_map(|r| r.ratio)
        .reduce(f64::min);
    let status = match c {
        None => CheckStatus::Inconclusive,
        Some(c) if nonpositive && c >= c_floor => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    };
    Ok(DissipativityReport {
        alpha,
        p,
        rows,
        nonpositive,
        c,
        c_floor,
        status,
    })
}
