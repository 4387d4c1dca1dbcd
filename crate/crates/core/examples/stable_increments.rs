//! Draws stable increments on a fine grid, coarsens them, and compares the
//! empirical median of |Z_1| with a Cauchy oracle.
//!
//! cargo run --release --example stable_increments

use levy_em::noise::{cauchy_cdf, sample_increments, LevyModel};

fn main() -> levy_em::Result<()> {
    let cauchy = LevyModel::isotropic(1.0, 1)?;
    let paths = 20_000;
    let mut totals: Vec<f64> = (0..paths)
        .map(|i| sample_increments(&cauchy, 64, 7, i).map(|g| g.total()[0].abs()))
        .collect::<levy_em::Result<_>>()?;
    totals.sort_by(f64::total_cmp);
    // P(|Z_1| ≤ 1) = 1/2 for the standard Cauchy law
    println!("median |Z_1|: {:.4} (Cauchy: 1, P(|Z|≤1) = {:.3})", totals[paths as usize / 2], 2.0 * cauchy_cdf(1.0) - 1.0);

    let model = LevyModel::cylindrical(1.5, 2)?;
    let fine = sample_increments(&model, 1024, 42, 0)?;
    for factor in [1, 16, 1024] {
        let coarse = fine.coarsen(factor)?;
        let first = coarse.increment(0);
        println!(
            "factor {factor:>4}: {:>4} steps, first increment ({:+.4}, {:+.4}), total {:?}",
            coarse.n_fine(),
            first[0],
            first[1],
            coarse.total()
        );
    }
    Ok(())
}
