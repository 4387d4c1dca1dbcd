//! Coupled-path Monte Carlo estimates of strong errors
//! `E sup_t |X^n_t - X_t|^p`, truncated moments `E(1 ∧ |Z_{1/n}|^q)`, and
//! log-log rate fits against the three-regime decay table.

mod fit;
mod moments;
mod plan;
mod rates;
mod report;
mod strong;
mod summation;

pub use fit::{fit_rate, ols, RateFit};
pub use moments::{empirical_truncated_moment, truncated_moment_study, MomentEstimate, MomentStudy, MOMENT_SLOPE_TOL};
pub use plan::{ExperimentPlan, MIN_REFERENCE_FACTOR};
pub use rates::{regime_of, theory_slope, truncated_moment_rate, Regime};
pub use report::{write_points_csv, RatePoint, RateReport, SLOPE_SLACK};
pub use strong::{rate_report, simulate_sup_distances, strong_error, SupDistances};
pub use summation::{pairwise_mean, pairwise_sum};
