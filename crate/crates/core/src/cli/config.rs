//! TOML experiment configuration.
//!
//! Every section is optional in the file; a subcommand fails with the path of
//! the missing or malformed entry before any simulation starts.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::errorlab::ExperimentPlan;
use crate::noise::{LevyModel, MeasureSpec, ProbeConfig};
use crate::sde::{make_holder_drift, DriftSpec};
use crate::spectral::SuiteConfig;
use crate::{Error, Result};

fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Master seed of all random streams; `--seed` overrides it.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; `--out` overrides it. Not part of the config hash.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<LevyModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drift: Option<DriftConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<MomentsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegeneracy: Option<NondegeneracyConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub besov: Option<SuiteConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DriftConfig {
    Zero,
    /// `b_i(x) = sign(x_i) min(|x_i|, 1)^β`.
    Holder { beta: f64 },
    /// `b(x) = rate·x`.
    Linear { rate: f64 },
    Constant { value: Vec<f64> },
}

impl DriftConfig {
    pub fn build(&self, dim: usize) -> Result<DriftSpec> {
        match self {
            DriftConfig::Zero => Ok(DriftSpec::zero(dim)),
            DriftConfig::Holder { beta } => make_holder_drift(*beta, dim),
            DriftConfig::Linear { rate } => DriftSpec::linear(*rate, dim),
            DriftConfig::Constant { value } => {
                if value.len() != dim {
                    return Err(config_error(
                        "drift.value",
                        format!("expected {dim} components, got {}", value.len()),
                    ));
                }
                DriftSpec::constant(value.clone())
            }
        }
    }

    /// Why this drift falls outside `b ∈ C^β` bounded with `β ∈ (1 - α/2, 1)`,
    /// the hypothesis under which the strong rate is proved.
    pub fn hypothesis_violation(&self, alpha: f64) -> Option<(String, String)> {
        let lower = 1.0 - 0.5 * alpha;
        match self {
            DriftConfig::Holder { beta } if !(*beta > lower && *beta < 1.0) => Some((
                "drift.beta".into(),
                format!(
                    "β = {beta} violates the strong-rate hypothesis β ∈ (1 - α/2, 1) = ({lower}, 1) for α = {alpha}; \
                     pass --allow-hypothesis-violation to run anyway"
                ),
            )),
            DriftConfig::Linear { .. } => Some((
                "drift.kind".into(),
                "a linear drift is unbounded, so it is not in C^β as the strong-rate hypothesis \
                 β ∈ (1 - α/2, 1) requires; pass --allow-hypothesis-violation to run anyway"
                    .into(),
            )),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateConfig {
    /// Resolution of the driving noise; the reference solution runs here.
    pub n_fine: usize,
    pub n_scheme: Vec<usize>,
    pub paths: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            n_fine: 1 << 12,
            n_scheme: vec![16, 256],
            paths: 1,
            x0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConvergenceConfig {
    /// Moment orders; all share one set of simulated paths.
    pub p: Vec<f64>,
    pub n_list: Vec<usize>,
    pub n_ref: usize,
    pub n_paths: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    /// Start of the scheme when it should differ from the reference start.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0_scheme: Option<Vec<f64>>,
    pub bootstrap_resamples: usize,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            p: vec![2.0],
            n_list: (3..=9).map(|k| 1 << k).collect(),
            n_ref: 1 << 15,
            n_paths: 10_000,
            x0: None,
            x0_scheme: None,
            bootstrap_resamples: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MomentsConfig {
    pub p: Vec<f64>,
    pub n_list: Vec<usize>,
    pub samples: usize,
}

impl Default for MomentsConfig {
    fn default() -> Self {
        Self {
            p: vec![0.75, 1.5, 3.0],
            n_list: (4..=14).map(|k| 1 << k).collect(),
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NondegeneracyConfig {
    /// Lévy measure to certify; defaults to the measure of `[model]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
    /// Index used in the scaling `ρ^{α-2}` and `|ξ|^{-α}`; defaults to the
    /// measure's own.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub rho_grid: Vec<f64>,
    pub eta_samples: usize,
    pub xi_probes: usize,
    pub m: f64,
}

impl Default for NondegeneracyConfig {
    fn default() -> Self {
        let probe = ProbeConfig::default();
        Self {
            measure: None,
            alpha: None,
            rho_grid: probe.rho_grid,
            eta_samples: probe.eta_samples,
            xi_probes: probe.xi_probes,
            m: probe.m,
        }
    }
}

impl NondegeneracyConfig {
    pub fn probe_config(&self) -> ProbeConfig {
        ProbeConfig {
            rho_grid: self.rho_grid.clone(),
            eta_samples: self.eta_samples,
            xi_probes: self.xi_probes,
            m: self.m,
            ..ProbeConfig::default()
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let de = toml::Deserializer::new(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            config_error(&field, e.into_inner().message().trim().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error("<file>", format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| config_error("<root>", e.to_string()))
    }

    /// Compact JSON of everything that determines the results.
    pub fn canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Hex SHA-256 of [`canonical_json`](Self::canonical_json).
    pub fn hash(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.canonical_json()?.as_bytes())))
    }

    pub fn model(&self) -> Result<&LevyModel> {
        self.model.as_ref().ok_or_else(|| config_error("model", "section is required"))
    }

    /// The model's drift, checked against the strong-rate hypothesis unless
    /// `allow_violation` is set. The second value carries the waived
    /// violation, if any.
    pub fn drift(&self, allow_violation: bool) -> Result<(DriftSpec, Option<String>)> {
        let model = self.model()?;
        let drift = self.drift.as_ref().ok_or_else(|| config_error("drift", "section is required"))?;
        let waived = match drift.hypothesis_violation(model.alpha()) {
            Some((field, message)) if !allow_violation => return Err(config_error(&field, message)),
            Some((_, message)) => Some(message),
            None => None,
        };
        let spec = drift.build(model.dim()).map_err(|e| match e {
            Error::Config { .. } => e,
            other => config_error("drift", other.to_string()),
        })?;
        Ok((spec, waived))
    }

    fn start(&self, x0: &Option<Vec<f64>>, field: &str) -> Result<Vec<f64>> {
        let dim = self.model()?.dim();
        match x0 {
            Some(v) if v.len() != dim => Err(config_error(
                field,
                format!("expected {dim} components, got {}", v.len()),
            )),
            Some(v) => Ok(v.clone()),
            None => Ok(vec![0.0; dim]),
        }
    }

    pub fn simulate_section(&self) -> Result<(&SimulateConfig, Vec<f64>)> {
        let sim = self
            .simulate
            .as_ref()
            .ok_or_else(|| config_error("simulate", "section is required"))?;
        let x0 = self.start(&sim.x0, "simulate.x0")?;
        if sim.paths == 0 {
            return Err(config_error("simulate.paths", "must be positive"));
        }
        if !sim.n_fine.is_power_of_two() {
            return Err(config_error("simulate.n_fine", "must be a power of two"));
        }
        if let Some(n) = sim.n_scheme.iter().find(|&&n| n == 0 || sim.n_fine % n != 0) {
            return Err(config_error("simulate.n_scheme", format!("{n} does not divide n_fine = {}", sim.n_fine)));
        }
        Ok((sim, x0))
    }

    /// One plan per requested moment order, all sharing the same paths.
    pub fn convergence_plans(&self, allow_violation: bool) -> Result<(Vec<ExperimentPlan>, Option<String>)> {
        let conv = self
            .convergence
            .as_ref()
            .ok_or_else(|| config_error("convergence", "section is required"))?;
        let model = *self.model()?;
        let (drift, waived) = self.drift(allow_violation)?;
        let x0 = self.start(&conv.x0, "convergence.x0")?;
        let x0_scheme = match &conv.x0_scheme {
            Some(_) => Some(self.start(&conv.x0_scheme, "convergence.x0_scheme")?),
            None => None,
        };
        if conv.p.is_empty() {
            return Err(config_error("convergence.p", "at least one moment order is required"));
        }
        let plans = conv
            .p
            .iter()
            .map(|&p| {
                let mut plan = ExperimentPlan::new(model, drift.clone(), p, self.seed);
                plan.n_list = conv.n_list.clone();
                plan.n_ref = conv.n_ref;
                plan.n_paths = conv.n_paths;
                plan.x0 = x0.clone();
                plan.x0_scheme = x0_scheme.clone();
                plan.bootstrap_resamples = conv.bootstrap_resamples;
                plan.validate().map_err(|e| config_error("convergence", e.to_string()))?;
                Ok(plan)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((plans, waived))
    }

    pub fn moments_section(&self) -> Result<&MomentsConfig> {
        let m = self
            .moments
            .as_ref()
            .ok_or_else(|| config_error("moments", "section is required"))?;
        if m.p.iter().any(|&p| !(p > 0.0)) {
            return Err(config_error("moments.p", "moment orders must be positive"));
        }
        if m.n_list.len() < 3 {
            return Err(config_error("moments.n_list", "at least three resolutions are needed for a fit"));
        }
        Ok(m)
    }

    /// The measure to certify and the index used for scaling.
    pub fn nondegeneracy_section(&self) -> Result<(MeasureSpec, f64, ProbeConfig)> {
        let nd = self
            .nondegeneracy
            .as_ref()
            .ok_or_else(|| config_error("nondegeneracy", "section is required"))?;
        let measure = match &nd.measure {
            Some(m) => {
                m.validate().map_err(|e| config_error("nondegeneracy.measure", e.to_string()))?;
                m.clone()
            }
            None => MeasureSpec::from_model(self.model()?).map_err(|e| config_error("model", e.to_string()))?,
        };
        let alpha = nd
            .alpha
            .or_else(|| measure.alpha())
            .ok_or_else(|| config_error("nondegeneracy.alpha", "required for this measure"))?;
        Ok((measure, alpha, nd.probe_config()))
    }

    pub fn besov_section(&self) -> Result<&SuiteConfig> {
        self.besov.as_ref().ok_or_else(|| config_error("besov", "section is required"))
    }
}
