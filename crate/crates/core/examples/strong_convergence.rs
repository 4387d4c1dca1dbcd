//! Strong error E sup|X^n - X|^p against n for two moment orders sharing one
//! simulation, with bootstrap intervals and the fitted rate.
//!
//! cargo run --release --example strong_convergence

use levy_em::errorlab::{rate_report, simulate_sup_distances, ExperimentPlan};
use levy_em::noise::LevyModel;
use levy_em::sde::make_holder_drift;

fn main() -> levy_em::Result<()> {
    let mut plan = ExperimentPlan::new(LevyModel::isotropic(1.5, 1)?, make_holder_drift(0.8, 1)?, 2.0, 11);
    // smaller than the default plan so it finishes in seconds
    plan.n_list = (3..=7).map(|k| 1 << k).collect();
    plan.n_ref = 1 << 13;
    plan.n_paths = 2000;
    let distances = simulate_sup_distances(&plan)?;
    for p in [2.0, 0.5] {
        let r = rate_report(&plan, &distances, p)?;
        println!("p = {p}: regime {:?}, theory slope {:.4}", r.regime, r.theory_slope);
        for pt in &r.per_n {
            println!("  n {:>4}  {:.4e}  [{:.4e}, {:.4e}]", pt.n, pt.estimate, pt.ci_low, pt.ci_high);
        }
        println!(
            "  fitted {:.3} {:?}, meets theory {}, monotone {}",
            r.fitted_slope.unwrap_or(f64::NAN),
            r.slope_ci,
            r.meets_theory(),
            r.is_monotone_within_ci()
        );
    }
    Ok(())
}
