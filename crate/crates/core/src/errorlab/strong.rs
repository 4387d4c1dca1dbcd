use rand::Rng;
use rayon::prelude::*;

use super::fit::ols;
use super::plan::ExperimentPlan;
use super::rates::{theory_slope, truncated_moment_rate};
use super::report::{RatePoint, RateReport};
use super::summation::{pairwise_mean, quantile_sorted};
use crate::error::{Error, Result};
use crate::noise::sample_increments;
use crate::rng::aux_stream;
use crate::sde::{reference_solution, sup_distance_to_reference};

const BOOTSTRAP_STREAM: u64 = 0xb007;

/// Pathwise sup distances `sup_t |X^n_t - X_t|`, one row per path, one column
/// per entry of `n_list`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupDistances {
    pub n_list: Vec<usize>,
    pub per_path: Vec<Vec<f64>>,
}

/// Simulates every path of `plan` on the current rayon pool.
///
/// Path `i` draws its noise from stream `(master_seed, i)`; results are
/// collected in path order, so the output does not depend on the schedule.
pub fn simulate_sup_distances(plan: &ExperimentPlan) -> Result<SupDistances> {
    plan.validate()?;
    let per_path = (0..plan.n_paths as u64)
        .into_par_iter()
        .map(|i| path_sup_distances(plan, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupDistances {
        n_list: plan.n_list.clone(),
        per_path,
    })
}

fn path_sup_distances(plan: &ExperimentPlan, path_index: u64) -> Result<Vec<f64>> {
    let grid = sample_increments(&plan.model, plan.n_ref, plan.master_seed, path_index)?;
    let reference = reference_solution(&plan.x0, &plan.drift, &grid)?;
    if reference.states().iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            path_index,
            n: plan.n_ref,
        });
    }
    plan.n_list
        .iter()
        .map(|&n| {
            let d = sup_distance_to_reference(plan.scheme_start(), &plan.drift, &grid, n, &reference)?;
            if d.is_finite() {
                Ok(d)
            } else {
                Err(Error::NonFinite { path_index, n })
            }
        })
        .collect()
}

/// Monte Carlo estimate of `E sup_{t∈[0,1]} |X^n_t - X_t|^p` for every `n` in
/// the plan, with paired-bootstrap confidence intervals and the fitted rate.
pub fn strong_error(plan: &ExperimentPlan) -> Result<RateReport> {
    let distances = simulate_sup_distances(plan)?;
    rate_report(plan, &distances, plan.p)
}

/// Builds the report for moment order `p` from already simulated distances,
/// so several `p` can share one simulation.
pub fn rate_report(plan: &ExperimentPlan, distances: &SupDistances, p: f64) -> Result<RateReport> {
    let n_paths = distances.per_path.len();
    let columns = distances.n_list.len();
    let powered: Vec<Vec<f64>> = (0..columns)
        .map(|c| distances.per_path.iter().map(|row| row[c].powf(p)).collect())
        .collect();
    let estimates: Vec<f64> = powered.iter().map(|col| pairwise_mean(col)).collect();

    let alpha = plan.model.alpha();
    let beta = plan.drift.beta();
    let (slope_theory, regime, log_factor) = theory_slope(alpha, beta, p);
    let exact_zero = estimates.iter().all(|&e| e == 0.0);

    // paired bootstrap: one set of resampled path indices per replicate, shared by all n
    let resamples = plan.bootstrap_resamples.max(1);
    let mut rng = aux_stream(plan.master_seed, BOOTSTRAP_STREAM);
    let mut boot_means = vec![Vec::with_capacity(resamples); columns];
    let mut boot_slopes = Vec::with_capacity(resamples);
    let log_inv_n: Vec<f64> = distances.n_list.iter().map(|&n| -(n as f64).ln()).collect();
    let mut idx = vec![0usize; n_paths];
    let mut means = vec![0.0; columns];
    for _ in 0..resamples {
        for slot in idx.iter_mut() {
            *slot = rng.random_range(0..n_paths);
        }
        for (c, col) in powered.iter().enumerate() {
            means[c] = idx.iter().map(|&i| col[i]).sum::<f64>() / n_paths as f64;
            boot_means[c].push(means[c]);
        }
        if columns >= 2 && means.iter().all(|&m| m > 0.0) {
            let logs: Vec<f64> = means.iter().map(|m| m.ln()).collect();
            boot_slopes.push(ols(&log_inv_n, &logs).0);
        }
    }

    let mut per_n = Vec::with_capacity(columns);
    for (c, &n) in distances.n_list.iter().enumerate() {
        let mut sorted = std::mem::take(&mut boot_means[c]);
        sorted.sort_by(f64::total_cmp);
        let theory_value = if n >= 2 {
            truncated_moment_rate(alpha, p * beta, n)?.0
        } else {
            1.0
        };
        per_n.push(RatePoint {
            n,
            estimate: estimates[c],
            ci_low: quantile_sorted(&sorted, 0.025),
            ci_high: quantile_sorted(&sorted, 0.975),
            theory_value,
        });
    }

    let (fitted_slope, intercept, slope_ci) = if exact_zero || columns < 2 || estimates.iter().any(|&e| e <= 0.0) {
        (None, None, None)
    } else {
        let logs: Vec<f64> = estimates.iter().map(|e| e.ln()).collect();
        let (s, i) = ols(&log_inv_n, &logs);
        let ci = if boot_slopes.is_empty() {
            None
        } else {
            boot_slopes.sort_by(f64::total_cmp);
            Some([quantile_sorted(&boot_slopes, 0.025), quantile_sorted(&boot_slopes, 0.975)])
        };
        (Some(s), Some(i), ci)
    };

    Ok(RateReport {
        p,
        alpha,
        beta,
        n_paths,
        per_n,
        fitted_slope,
        intercept,
        slope_ci,
        theory_slope: slope_theory,
        regime,
        log_factor,
        exact_zero,
    })
}
