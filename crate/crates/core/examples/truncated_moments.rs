//! E(1 ∧ |Z_{1/n}|^p) in the three regimes p < α, p = α, p > α.
//!
//! cargo run --release --example truncated_moments

use levy_em::errorlab::{truncated_moment_rate, truncated_moment_study, Regime};
use levy_em::noise::LevyModel;

fn main() -> levy_em::Result<()> {
    let model = LevyModel::isotropic(1.5, 1)?;
    let n_list: Vec<usize> = (4..=12).step_by(2).map(|k| 1 << k).collect();
    for p in [0.75, 1.5, 3.0] {
        let study = truncated_moment_study(&model, p, &n_list, 50_000, 5)?;
        println!(
            "p = {p}: {:?}, fitted slope {:.3}, model slope {:.3}, passes {}",
            study.regime,
            study.fitted_slope,
            study.theory_slope,
            study.passes()
        );
        for (pt, comp) in study.points.iter().zip(&study.compensated) {
            let (model_rate, _) = truncated_moment_rate(1.5, p, pt.n)?;
            print!("  n {:>5}  est {:.4e}  model {:.4e}", pt.n, pt.estimate, model_rate);
            if study.regime == Regime::Critical {
                print!("  n·est/log n {comp:.3} (band {:.3}..{:.3})", study.critical_band().0, study.critical_band().1);
            }
            println!();
        }
    }
    Ok(())
}
