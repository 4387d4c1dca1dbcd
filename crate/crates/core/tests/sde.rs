use levy_em::noise::{sample_increments, IncrementGrid, LevyModel};
use levy_em::sde::*;
use proptest::prelude::*;

#[test]
fn kn_examples() {
    assert_eq!(kn(0.37, 10), 0.3);
    assert_eq!(kn(0.25, 4), 0.25);
    assert_eq!(kn(1.0, 4), 1.0);
    assert_eq!(kn(0.0, 7), 0.0);
}

fn partial_sums(x0: &[f64], grid: &IncrementGrid) -> Vec<f64> {
    let d = grid.dim();
    let mut out = x0.to_vec();
    let mut x = x0.to_vec();
    for k in 0..grid.n_fine() {
        for (xi, dz) in x.iter_mut().zip(grid.increment(k)) {
            *xi += dz;
        }
        out.extend_from_slice(&x);
    }
    assert_eq!(out.len(), (grid.n_fine() + 1) * d);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn zero_drift_couples_exactly(seed in any::<u64>(), dim in 1usize..4, alpha in 0.3f64..2.0, x in -3.0f64..3.0) {
        let model = LevyModel::cylindrical(alpha, dim).unwrap();
        let grid = sample_increments(&model, 1 << 10, seed, 0).unwrap();
        let x0 = vec![x; dim];
        let drift = DriftSpec::zero(dim);
        let reference = reference_solution(&x0, &drift, &grid).unwrap();
        // partial sums through x + 0·h + dz are the same floating-point sums
        prop_assert_eq!(reference.states(), &partial_sums(&x0, &grid)[..]);
        for n in [1, 8, 64, 1024] {
            let em = euler_maruyama(&x0, &drift, &grid, n).unwrap();
            prop_assert_eq!(sup_distance(&em, &reference).unwrap(), 0.0);
        }
    }

    #[test]
    fn constant_drift_ignores_resolution(seed in any::<u64>(), c in -2.0f64..2.0) {
        let model = LevyModel::isotropic(1.1, 2).unwrap();
        let grid = sample_increments(&model, 512, seed, 1).unwrap();
        let drift = DriftSpec::constant(vec![c, -c]).unwrap();
        let x0 = [0.5, -0.25];
        let reference = reference_solution(&x0, &drift, &grid).unwrap();
        for n in [1, 4, 32, 512] {
            let em = euler_maruyama(&x0, &drift, &grid, n).unwrap();
            prop_assert_eq!(em.states(), reference.states());
        }
        let sums = partial_sums(&x0, &grid);
        for k in [0usize, 1, 100, 512] {
            let t = k as f64 / 512.0;
            let s = reference.state(k);
            prop_assert!((s[0] - (sums[2 * k] + c * t)).abs() < 1e-12);
            prop_assert!((s[1] - (sums[2 * k + 1] - c * t)).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_two_level_reconstruction(seed in any::<u64>(), log_n in 0u32..8, beta in 0.2f64..0.95) {
        let model = LevyModel::isotropic(1.5, 1).unwrap();
        let n_fine = 256;
        let n = 1usize << log_n;
        let grid = sample_increments(&model, n_fine, seed, 2).unwrap();
        let drift = make_holder_drift(beta, 1).unwrap();
        let em = euler_maruyama(&[0.3], &drift, &grid, n).unwrap();

        // direct two-level loop: freeze b at the scheme node, then walk the fine steps
        let h = 1.0 / n_fine as f64;
        let stride = n_fine / n;
        let mut x = 0.3;
        let mut states = vec![x];
        let mut b = [0.0];
        for k in 0..n {
            drift.evaluate(&[x], &mut b);
            for j in 0..stride {
                x = x + b[0] * h + grid.increment(k * stride + j)[0];
                states.push(x);
            }
        }
        prop_assert_eq!(em.states(), &states[..]);

        // at scheme nodes the path only sees block sums of the noise
        let coarse = grid.coarsen(stride).unwrap();
        let em_coarse = euler_maruyama(&[0.3], &drift, &coarse, n).unwrap();
        for k in 0..=n {
            prop_assert!((em.state(k * stride)[0] - em_coarse.state(k)[0]).abs() < 1e-12);
        }
    }
}

#[test]
fn explicit_single_step() {
    let grid = IncrementGrid::from_increments(1, vec![0.0]).unwrap();
    let drift = DriftSpec::linear(1.0, 1).unwrap();
    let em = euler_maruyama(&[1.5], &drift, &grid, 1).unwrap();
    assert_eq!(em.endpoint(), &[3.0]);
    assert_eq!(em.x0(), &[1.5]);
}

#[test]
fn refinement_is_cauchy_for_lipschitz_drift() {
    let model = LevyModel::isotropic(1.5, 1).unwrap();
    let drift = DriftSpec::linear(-1.0, 1).unwrap();
    let levels: Vec<usize> = (4..=14).map(|k| 1 << k).collect();
    let paths = 40;
    let mut gaps = vec![0.0; levels.len() - 1];
    for path in 0..paths {
        let fine = sample_increments(&model, 1 << 14, 77, path).unwrap();
        let ends: Vec<f64> = levels
            .iter()
            .map(|&n| {
                let grid = fine.coarsen((1 << 14) / n).unwrap();
                reference_solution(&[1.0], &drift, &grid).unwrap().endpoint()[0]
            })
            .collect();
        for (g, w) in gaps.iter_mut().zip(ends.windows(2)) {
            *g += (w[1] - w[0]).abs() / paths as f64;
        }
    }
    for w in gaps.windows(2) {
        assert!(w[1] < w[0], "gaps not decreasing: {gaps:?}");
    }
}

#[test]
fn cylindrical_coordinates_decouple() {
    let model = LevyModel::cylindrical(1.3, 2).unwrap();
    let grid = sample_increments(&model, 1024, 9, 0).unwrap();
    let drift2 = make_holder_drift(0.7, 2).unwrap();
    let drift1 = make_holder_drift(0.7, 1).unwrap();
    let x0 = [0.4, -1.2];
    let joint = euler_maruyama(&x0, &drift2, &grid, 32).unwrap();
    for i in 0..2 {
        let column: Vec<f64> = (0..1024).map(|k| grid.increment(k)[i]).collect();
        let g1 = IncrementGrid::from_increments(1, column).unwrap();
        let single = euler_maruyama(&x0[i..=i], &drift1, &g1, 32).unwrap();
        for k in 0..=1024 {
            assert_eq!(joint.state(k)[i], single.state(k)[0]);
        }
    }
}

#[test]
fn holder_drift_values() {
    let b = make_holder_drift(0.5, 1).unwrap();
    let mut out = [1.0];
    b.evaluate(&[0.0], &mut out);
    assert_eq!(out[0], 0.0);
    b.evaluate(&[0.04], &mut out);
    assert!((out[0] - 0.2).abs() < 1e-15);
    b.evaluate(&[-7.0], &mut out);
    assert_eq!(out[0], -1.0);
    assert!((b.cbeta_bound() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    assert!(make_holder_drift(1.0, 1).is_err());
    assert!(make_holder_drift(0.0, 1).is_err());
}

#[test]
fn shipped_drifts_pass_the_probe_scan() {
    let mut drifts = vec![DriftSpec::zero(2), DriftSpec::constant(vec![0.5, -2.0]).unwrap()];
    for d in 1..=3 {
        drifts.push(DriftSpec::linear(-1.0, d).unwrap());
        for beta in [0.1, 0.5, 0.8, 0.99] {
            drifts.push(make_holder_drift(beta, d).unwrap());
        }
    }
    for drift in &drifts {
        let scan = certify_drift(drift, 10_000, 4);
        assert!(scan.passes(1e-12), "{} d={} beta={}: {scan:?}", drift.name(), drift.dim(), drift.beta());
    }
}

#[test]
fn sup_distance_examples() {
    let a = Trajectory::from_states(2, 1, vec![0.0, 1.0, 0.0]).unwrap();
    let b = Trajectory::from_states(2, 1, vec![0.0, 0.0, 0.0]).unwrap();
    assert_eq!(sup_distance(&a, &b).unwrap(), 1.0);
    assert_eq!(sup_distance(&a, &a).unwrap(), 0.0);

    let model = LevyModel::isotropic(1.2, 2).unwrap();
    let grid = sample_increments(&model, 64, 1, 0).unwrap();
    let drift = DriftSpec::zero(2);
    let p = euler_maruyama(&[0.0, 0.0], &drift, &grid, 8).unwrap();
    let q = euler_maruyama(&[3.0, 4.0], &drift, &grid, 8).unwrap();
    assert!((sup_distance(&p, &q).unwrap() - 5.0).abs() < 1e-12);

    let other = sample_increments(&model, 128, 1, 0).unwrap();
    let r = euler_maruyama(&[0.0, 0.0], &drift, &other, 8).unwrap();
    assert!(sup_distance(&p, &r).is_err());
}

#[test]
fn resolution_must_divide_the_grid() {
    let model = LevyModel::isotropic(1.2, 1).unwrap();
    let grid = sample_increments(&model, 64, 1, 0).unwrap();
    let drift = DriftSpec::zero(1);
    assert!(euler_maruyama(&[0.0], &drift, &grid, 128).is_err());
    assert!(euler_maruyama(&[0.0], &drift, &grid, 3).is_err());
    assert!(euler_maruyama(&[0.0, 0.0], &drift, &grid, 8).is_err());
}

#[test]
fn trajectory_csv_layout() {
    let t = Trajectory::from_states(2, 2, vec![0.0, 1.0, 0.5, 1.5, 1.0, 2.0]).unwrap();
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x_1,x_2");
    assert_eq!(lines[1], "0,0,1");
    assert_eq!(lines[3], "1,1,2");
}
