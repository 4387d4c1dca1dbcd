use std::io::Write;

use super::drift::DriftSpec;
use crate::error::{argument, Result};
use crate::noise::IncrementGrid;

/// `k_n(t) = ⌊nt⌋/n`, the last scheme node at or before `t`.
pub fn kn(t: f64, n: usize) -> f64 {
    let n = n as f64;
    (n * t).floor() / n
}

/// States of one path at the fine-grid times `k/n_fine`, `k = 0..=n_fine`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    n_scheme: usize,
    n_fine: usize,
    dim: usize,
    states: Vec<f64>,
}

impl Trajectory {
    /// Wraps explicit states (row-major, `(n_fine + 1) × dim`).
    pub fn from_states(n_scheme: usize, dim: usize, states: Vec<f64>) -> Result<Self> {
        if dim == 0 || states.len() % dim != 0 || states.len() < 2 * dim {
            return Err(argument("state buffer must hold at least two whole rows"));
        }
        Ok(Self {
            n_scheme,
            n_fine: states.len() / dim - 1,
            dim,
            states,
        })
    }

    pub fn n_scheme(&self) -> usize {
        self.n_scheme
    }

    pub fn n_fine(&self) -> usize {
        self.n_fine
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x0(&self) -> &[f64] {
        self.state(0)
    }

    /// State at time `k / n_fine`.
    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.dim..(k + 1) * self.dim]
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    pub fn endpoint(&self) -> &[f64] {
        self.state(self.n_fine)
    }

    /// CSV with header `t,x_1,..,x_d`, one row per fine-grid node.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "t")?;
        for i in 1..=self.dim {
            write!(w, ",x_{i}")?;
        }
        writeln!(w)?;
        for k in 0..=self.n_fine {
            write!(w, "{}", k as f64 / self.n_fine as f64)?;
            for x in self.state(k) {
                write!(w, ",{x}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn check_inputs(x0: &[f64], drift: &DriftSpec, grid: &IncrementGrid, n_scheme: usize) -> Result<()> {
    if x0.len() != grid.dim() || drift.dim() != grid.dim() {
        return Err(argument(format!(
            "dimension mismatch: x0 {}, drift {}, noise {}",
            x0.len(),
            drift.dim(),
            grid.dim()
        )));
    }
    if n_scheme == 0 || !n_scheme.is_power_of_two() || grid.n_fine() % n_scheme != 0 {
        return Err(argument(format!(
            "scheme resolution {n_scheme} must be a power of two dividing n_fine = {}",
            grid.n_fine()
        )));
    }
    Ok(())
}

/// Runs the scheme on the fine grid and hands every state (including `x0`)
/// to `visit(k, state)`.
///
/// Over each fine step the state moves by `b(X_{k_n})·h + ΔZ`, where the drift
/// argument refreshes only at multiples of `1/n_scheme`.
pub(crate) fn integrate(
    x0: &[f64],
    drift: &DriftSpec,
    grid: &IncrementGrid,
    n_scheme: usize,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<()> {
    check_inputs(x0, drift, grid, n_scheme)?;
    let n_fine = grid.n_fine();
    let stride = n_fine / n_scheme;
    let h = 1.0 / n_fine as f64;
    let mut state = x0.to_vec();
    let mut frozen = vec![0.0; x0.len()];
    visit(0, &state);
    for k in 0..n_fine {
        if k % stride == 0 {
            drift.evaluate(&state, &mut frozen);
        }
        for ((x, b), dz) in state.iter_mut().zip(&frozen).zip(grid.increment(k)) {
            *x = *x + b * h + dz;
        }
        visit(k + 1, &state);
    }
    Ok(())
}

/// Euler–Maruyama path `X^n` for `n = n_scheme`, sampled at the fine times of
/// `grid`. With `n_scheme == grid.n_fine()` this is the ordinary scheme.
pub fn euler_maruyama(x0: &[f64], drift: &DriftSpec, grid: &IncrementGrid, n_scheme: usize) -> Result<Trajectory> {
    let dim = x0.len();
    let mut states = Vec::with_capacity((grid.n_fine() + 1) * dim);
    integrate(x0, drift, grid, n_scheme, |_, s| states.extend_from_slice(s))?;
    Ok(Trajectory {
        n_scheme,
        n_fine: grid.n_fine(),
        dim,
        states,
    })
}

/// Proxy for the exact solution: the scheme run at the full resolution of
/// `grid`. Callers pick `grid.n_fine()` well above every resolution under test.
pub fn reference_solution(x0: &[f64], drift: &DriftSpec, grid: &IncrementGrid) -> Result<Trajectory> {
    euler_maruyama(x0, drift, grid, grid.n_fine())
}

/// `max_k |a(k/n) - b(k/n)|` over the shared fine grid.
pub fn sup_distance(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    if a.n_fine != b.n_fine || a.dim != b.dim {
        return Err(argument(format!(
            "trajectories live on different grids: ({}, d={}) vs ({}, d={})",
            a.n_fine, a.dim, b.n_fine, b.dim
        )));
    }
    Ok(a.states
        .chunks_exact(a.dim)
        .zip(b.states.chunks_exact(b.dim))
        .map(|(x, y)| distance(x, y))
        .fold(0.0, f64::max))
}

#[inline]
pub(crate) fn distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// `sup_distance(euler_maruyama(..), reference)` without materializing the
/// scheme path.
pub(crate) fn sup_distance_to_reference(
    x0: &[f64],
    drift: &DriftSpec,
    grid: &IncrementGrid,
    n_scheme: usize,
    reference: &Trajectory,
) -> Result<f64> {
    if reference.n_fine != grid.n_fine() || reference.dim != grid.dim() {
        return Err(argument("reference trajectory does not match the noise grid"));
    }
    let mut sup: f64 = 0.0;
    integrate(x0, drift, grid, n_scheme, |k, s| {
        sup = sup.max(distance(s, reference.state(k)));
    })?;
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{sample_increments, LevyModel};

    #[test]
    fn kn_floor_arithmetic() {
        assert!((kn(0.37, 10) - 0.3).abs() < 1e-15);
        assert_eq!(kn(0.25, 4), 0.25);
        assert_eq!(kn(1.0, 4), 1.0);
        assert_eq!(kn(0.0, 7), 0.0);
    }

    #[test]
    fn single_explicit_step() {
        let grid = IncrementGrid::from_increments(1, vec![0.0]).unwrap();
        let b = DriftSpec::linear(1.0, 1).unwrap();
        let path = euler_maruyama(&[1.5], &b, &grid, 1).unwrap();
        assert_eq!(path.endpoint(), &[3.0]);
    }

    #[test]
    fn zero_drift_is_partial_sums() {
        let model = LevyModel::isotropic(0.9, 2).unwrap();
        let grid = sample_increments(&model, 64, 3, 0).unwrap();
        let x0 = [0.5, -1.0];
        let mut acc = x0.to_vec();
        for n in [1, 8, 64] {
            let path = euler_maruyama(&x0, &DriftSpec::zero(2), &grid, n).unwrap();
            acc.copy_from_slice(&x0);
            for k in 0..64 {
                for (a, dz) in acc.iter_mut().zip(grid.increment(k)) {
                    *a = *a + 0.0 + dz;
                }
                assert_eq!(path.state(k + 1), acc.as_slice());
            }
        }
    }

    #[test]
    fn resolution_mismatch() {
        let grid = IncrementGrid::from_increments(1, vec![0.0; 16]).unwrap();
        let b = DriftSpec::zero(1);
        assert!(euler_maruyama(&[0.0], &b, &grid, 32).is_err());
        assert!(euler_maruyama(&[0.0], &b, &grid, 3).is_err());
        assert!(euler_maruyama(&[0.0, 0.0], &b, &grid, 4).is_err());
    }

    #[test]
    fn sup_distance_examples() {
        let a = Trajectory::from_states(2, 1, vec![0.0, 1.0, 0.0]).unwrap();
        let b = Trajectory::from_states(2, 1, vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(sup_distance(&a, &b).unwrap(), 1.0);
        assert_eq!(sup_distance(&a, &a).unwrap(), 0.0);
        let c = Trajectory::from_states(1, 2, vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let d = Trajectory::from_states(1, 2, vec![3.0, 4.0, 4.0, 5.0]).unwrap();
        assert_eq!(sup_distance(&c, &d).unwrap(), 5.0);
        assert!(sup_distance(&a, &c).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = Trajectory::from_states(1, 2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,x_1,x_2\n0,0,1\n1,2,3\n");
    }
}
