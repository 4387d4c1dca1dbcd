//! One noise path, a fine reference solution and Euler–Maruyama at three
//! resolutions, all driven by the same increments.
//!
//! cargo run --release --example trajectories

use levy_em::noise::{sample_increments, LevyModel};
use levy_em::sde::{certify_drift, euler_maruyama, make_holder_drift, reference_solution, sup_distance};

fn main() -> levy_em::Result<()> {
    let model = LevyModel::isotropic(1.5, 1)?;
    let drift = make_holder_drift(0.8, 1)?;
    let scan = certify_drift(&drift, 10_000, 1);
    println!("drift {} beta {}: certified {}", drift.name(), drift.beta(), scan.passes(1e-12));

    let grid = sample_increments(&model, 1 << 12, 3, 0)?;
    let x0 = [0.5];
    let reference = reference_solution(&x0, &drift, &grid)?;
    println!("reference endpoint {:+.5}", reference.endpoint()[0]);
    for n in [8, 64, 512] {
        let em = euler_maruyama(&x0, &drift, &grid, n)?;
        println!(
            "n = {n:>3}: endpoint {:+.5}, sup distance {:.5}",
            em.endpoint()[0],
            sup_distance(&em, &reference)?
        );
    }
    let mut csv = Vec::new();
    euler_maruyama(&x0, &drift, &grid, 8)?.write_csv(&mut csv).expect("in-memory write");
    print!("{}", String::from_utf8_lossy(&csv).lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
