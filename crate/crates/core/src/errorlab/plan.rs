use crate::error::{argument, Result};
use crate::noise::LevyModel;
use crate::sde::DriftSpec;

/// Ratio between the reference resolution and the finest scheme resolution.
pub const MIN_REFERENCE_FACTOR: usize = 64;

/// Parameters of one strong-error experiment.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub model: LevyModel,
    pub drift: DriftSpec,
    pub p: f64,
    pub n_list: Vec<usize>,
    pub n_ref: usize,
    pub n_paths: usize,
    pub master_seed: u64,
    /// Initial value of the reference solution.
    pub x0: Vec<f64>,
    /// Initial value of the scheme; `None` means `x0`.
    pub x0_scheme: Option<Vec<f64>>,
    pub bootstrap_resamples: usize,
}

impl ExperimentPlan {
    /// Plan with the default grid `n ∈ {2^3..2^9}`, `n_ref = 2^15`, `10^4` paths,
    /// started from the origin.
    pub fn new(model: LevyModel, drift: DriftSpec, p: f64, master_seed: u64) -> Self {
        let dim = model.dim();
        Self {
            model,
            drift,
            p,
            n_list: (3..=9).map(|k| 1usize << k).collect(),
            n_ref: 1 << 15,
            n_paths: 10_000,
            master_seed,
            x0: vec![0.0; dim],
            x0_scheme: None,
            bootstrap_resamples: 1000,
        }
    }

    pub fn scheme_start(&self) -> &[f64] {
        self.x0_scheme.as_deref().unwrap_or(&self.x0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(argument(format!("p must be positive, got {}", self.p)));
        }
        if self.n_list.is_empty() {
            return Err(argument("n_list is empty"));
        }
        if let Some(&n) = self.n_list.iter().find(|n| !n.is_power_of_two()) {
            return Err(argument(format!("n_list entry {n} is not a power of two")));
        }
        if !self.n_ref.is_power_of_two() {
            return Err(argument(format!("n_ref = {} is not a power of two", self.n_ref)));
        }
        let n_max = *self.n_list.iter().max().expect("nonempty");
        if n_max * MIN_REFERENCE_FACTOR > self.n_ref {
            return Err(argument(format!(
                "n_ref = {} must be at least {MIN_REFERENCE_FACTOR}·max(n_list) = {}",
                self.n_ref,
                n_max * MIN_REFERENCE_FACTOR
            )));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| self.n_ref % n != 0) {
            return Err(argument(format!("n = {n} does not divide n_ref = {}", self.n_ref)));
        }
        if self.n_paths == 0 {
            return Err(argument("n_paths must be positive"));
        }
        let dim = self.model.dim();
        if self.drift.dim() != dim || self.x0.len() != dim || self.scheme_start().len() != dim {
            return Err(argument("model, drift and initial values disagree on the dimension"));
        }
        Ok(())
    }
}
