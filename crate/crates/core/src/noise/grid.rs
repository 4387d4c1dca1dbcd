use rand::Rng;

use super::model::{Flavor, LevyModel};
use super::stable::{positive_stable_unchecked, symmetric_stable};
use crate::error::{argument, Result};
use crate::rng::{self, std_normal};

/// Increments of one noise path on the uniform grid `k/n_fine` of `[0, 1]`.
///
/// Row `k` holds `Z_{(k+1)/n_fine} - Z_{k/n_fine}`; storage is row-major,
/// `n_fine × dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementGrid {
    n_fine: usize,
    dim: usize,
    increments: Vec<f64>,
    master_seed: u64,
    path_index: u64,
}

/// Writes one unit-time variate `Z_1` of `model` into `out`.
pub fn unit_variate<R: Rng + ?Sized>(model: &LevyModel, rng: &mut R, out: &mut [f64]) {
    let sigma = model.scale();
    match model.flavor() {
        Flavor::Gaussian => {
            for x in out.iter_mut() {
                *x = sigma * std::f64::consts::SQRT_2 * std_normal(rng);
            }
        }
        Flavor::Cylindrical => {
            for x in out.iter_mut() {
                *x = sigma * symmetric_stable(model.alpha(), rng);
            }
        }
        Flavor::Isotropic if out.len() == 1 => {
            out[0] = sigma * symmetric_stable(model.alpha(), rng);
        }
        Flavor::Isotropic => {
            // Z = sqrt(2 S) N with S positive (α/2)-stable: E e^{iξ·Z} = E e^{-S|ξ|²}.
            let s = positive_stable_unchecked(0.5 * model.alpha(), rng);
            let radius = sigma * (2.0 * s).sqrt();
            for x in out.iter_mut() {
                *x = radius * std_normal(rng);
            }
        }
    }
}

/// Samples `n_fine` independent increments of `Z` over steps of length
/// `1/n_fine`, each distributed as `Z_{1/n_fine} = n_fine^{-1/α} Z_1`.
///
/// The draws come from the counter-based stream `(master_seed, path_index)`,
/// so the result is reproducible bit-for-bit.
pub fn sample_increments(
    model: &LevyModel,
    n_fine: usize,
    master_seed: u64,
    path_index: u64,
) -> Result<IncrementGrid> {
    if n_fine == 0 || !n_fine.is_power_of_two() {
        return Err(argument(format!(
            "n_fine must be a positive power of two, got {n_fine}"
        )));
    }
    let dim = model.dim();
    let mut rng = rng::stream(master_seed, path_index);
    let step_scale = (n_fine as f64).powf(-1.0 / model.alpha());
    let mut increments = vec![0.0; n_fine * dim];
    for row in increments.chunks_exact_mut(dim) {
        unit_variate(model, &mut rng, row);
        for x in row.iter_mut() {
            *x *= step_scale;
        }
    }
    Ok(IncrementGrid {
        n_fine,
        dim,
        increments,
        master_seed,
        path_index,
    })
}

impl IncrementGrid {
    /// Builds a grid from explicit increments (row-major `n_fine × dim`).
    pub fn from_increments(dim: usize, increments: Vec<f64>) -> Result<Self> {
        if dim == 0 || increments.len() % dim != 0 {
            return Err(argument("increment buffer is not a whole number of rows"));
        }
        let n_fine = increments.len() / dim;
        if n_fine == 0 || !n_fine.is_power_of_two() {
            return Err(argument(format!(
                "grid resolution must be a positive power of two, got {n_fine}"
            )));
        }
        Ok(Self {
            n_fine,
            dim,
            increments,
            master_seed: 0,
            path_index: 0,
        })
    }

    pub fn n_fine(&self) -> usize {
        self.n_fine
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn path_index(&self) -> u64 {
        self.path_index
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// Increment over `(k/n_fine, (k+1)/n_fine]`.
    pub fn increment(&self, k: usize) -> &[f64] {
        &self.increments[k * self.dim..(k + 1) * self.dim]
    }

    /// Same noise path at resolution `n_fine / factor`.
    ///
    /// Each block of `factor` increments is reduced by balanced pairwise
    /// summation, which makes coarsening compose exactly:
    /// `coarsen(a·b) == coarsen(a).coarsen(b)` bit-for-bit.
    pub fn coarsen(&self, factor: usize) -> Result<IncrementGrid> {
        if factor == 0 || !factor.is_power_of_two() || self.n_fine % factor != 0 {
            return Err(argument(format!(
                "coarsening factor {factor} must be a power of two dividing {}",
                self.n_fine
            )));
        }
        let n_coarse = self.n_fine / factor;
        let mut out = vec![0.0; n_coarse * self.dim];
        let mut column = vec![0.0; factor];
        for (k, row) in out.chunks_exact_mut(self.dim).enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                for (m, c) in column.iter_mut().enumerate() {
                    *c = self.increments[(k * factor + m) * self.dim + i];
                }
                *slot = pairwise_sum_pow2(&mut column);
            }
        }
        Ok(IncrementGrid {
            n_fine: n_coarse,
            dim: self.dim,
            increments: out,
            master_seed: self.master_seed,
            path_index: self.path_index,
        })
    }

    /// `Z_1` of the path.
    pub fn total(&self) -> Vec<f64> {
        self.coarsen(self.n_fine)
            .expect("n_fine always divides itself")
            .increments
    }
}

// Balanced tree reduction of a power-of-two sized buffer (destroys `buf`).
fn pairwise_sum_pow2(buf: &mut [f64]) -> f64 {
    let mut len = buf.len();
    while len > 1 {
        let half = len / 2;
        for i in 0..half {
            buf[i] = buf[2 * i] + buf[2 * i + 1];
        }
        len = half;
    }
    buf[0]
}
