use std::f64::consts::PI;

use serde::Serialize;

use super::measure::MeasureSpec;
use crate::error::{argument, Result};
use crate::quadrature::Quadrature;
use crate::rng::{aux_stream, std_normal};

/// Probe layout for [`check_nondegeneracy`].
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// Radii ρ at which the small-ball second moment is probed; `ρ_0 = max`.
    pub rho_grid: Vec<f64>,
    /// Number of probe directions on the unit sphere (coordinate axes included).
    pub eta_samples: usize,
    /// Number of frequency radii `M·2^i`, `i = 0..xi_probes`.
    pub xi_probes: usize,
    /// Frequency threshold `M`.
    pub m: f64,
    pub quadrature: Quadrature,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            rho_grid: (1..=10).map(|k| 2f64.powi(-k)).collect(),
            eta_samples: 64,
            xi_probes: 8,
            m: 1.0,
            quadrature: Quadrature::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// `ρ^{α-2} ∫_{|z|≤ρ} |η·z|² ν(dz)`
    SmallBall,
    /// `|ξ|^{-α} Re(-ψ(ξ))`
    Symbol,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSample {
    pub kind: ProbeKind,
    pub direction: Vec<f64>,
    pub radius: f64,
    pub value: f64,
}

/// Numerical certificate for the small-ball condition
/// `∫_{|z|≤ρ} |η·z|² ν(dz) ≥ c ρ^{2-α}` and the symbol bound
/// `Re(-ψ(ξ)) ≥ c_0 |ξ|^α` for `|ξ| ≥ M`, over a finite probe set.
#[derive(Debug, Clone, Serialize)]
pub struct NondegeneracyCertificate {
    pub c_estimate: f64,
    pub rho0: f64,
    pub c0_estimate: f64,
    pub m_estimate: f64,
    pub valid: bool,
    pub probe_report: Vec<ProbeSample>,
}

/// Unit directions used as probes: `±e_i` first, then quasi-uniform points.
pub fn probe_directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::with_capacity(count.max(2 * dim));
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = sign;
            dirs.push(e);
        }
    }
    let extra = count.saturating_sub(dirs.len());
    match dim {
        1 => {}
        2 => {
            for k in 0..extra {
                let theta = PI * (2 * k + 1) as f64 / extra as f64;
                let (s, c) = theta.sin_cos();
                dirs.push(vec![c, s]);
            }
        }
        3 => {
            // spherical Fibonacci lattice
            let golden = PI * (3.0 - 5f64.sqrt());
            for k in 0..extra {
                let z = 1.0 - (2 * k + 1) as f64 / extra as f64;
                let r = (1.0 - z * z).sqrt();
                let (s, c) = (golden * k as f64).sin_cos();
                dirs.push(vec![r * c, r * s, z]);
            }
        }
        _ => {
            let mut rng = aux_stream(0x5eed_d1ec, dim as u64);
            for _ in 0..extra {
                let v: Vec<f64> = (0..dim).map(|_| std_normal(&mut rng)).collect();
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                dirs.push(v.into_iter().map(|x| x / n).collect());
            }
        }
    }
    dirs
}

/// Probes the nondegeneracy constants of `measure` at index `alpha`.
///
/// `c_estimate` is the minimum over `(η, ρ)` of `ρ^{α-2}∫_{|z|≤ρ}|η·z|²ν(dz)`;
/// `c0_estimate` the minimum over `|ξ| ≥ M` of `|ξ|^{-α} Re(-ψ(ξ))`. The
/// certificate is valid iff both are positive.
pub fn check_nondegeneracy(
    measure: &MeasureSpec,
    alpha: f64,
    config: &ProbeConfig,
) -> Result<NondegeneracyCertificate> {
    measure.validate()?;
    if config.rho_grid.is_empty() || config.rho_grid.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(argument("rho_grid must be a nonempty set of positive radii"));
    }
    if !(config.m > 0.0) {
        return Err(argument("frequency threshold M must be positive"));
    }
    let dim = measure.dim();
    let dirs = probe_directions(dim, config.eta_samples);
    let rho0 = config.rho_grid.iter().cloned().fold(f64::MIN, f64::max);
    let mut report = Vec::new();

    let mut c_estimate = f64::INFINITY;
    for eta in &dirs {
        for &rho in &config.rho_grid {
            let moment = measure.small_ball_second_moment(eta, rho, &config.quadrature)?;
            let value = rho.powf(alpha - 2.0) * moment;
            c_estimate = c_estimate.min(value);
            report.push(ProbeSample {
                kind: ProbeKind::SmallBall,
                direction: eta.clone(),
                radius: rho,
                value,
            });
        }
    }

    let mut c0_estimate = f64::INFINITY;
    let radii: Vec<f64> = (0..config.xi_probes.max(1))
        .map(|i| config.m * 2f64.powi(i as i32))
        .collect();
    for &radius in &radii {
        // ψ of a rotationally invariant measure depends on |ξ| only
        let radial_value = if measure.is_radial() {
            let mut xi = vec![0.0; dim];
            xi[0] = radius;
            Some(-measure.char_exponent(&xi)?.re)
        } else {
            None
        };
        for eta in &dirs {
            let symbol = match radial_value {
                Some(v) => v,
                None => {
                    let xi: Vec<f64> = eta.iter().map(|x| x * radius).collect();
                    -measure.char_exponent(&xi)?.re
                }
            };
            let value = symbol * radius.powf(-alpha);
            c0_estimate = c0_estimate.min(value);
            report.push(ProbeSample {
                kind: ProbeKind::Symbol,
                direction: eta.clone(),
                radius,
                value,
            });
        }
    }

    Ok(NondegeneracyCertificate {
        c_estimate,
        rho0,
        c0_estimate,
        m_estimate: config.m,
        valid: c_estimate > 0.0 && c0_estimate > 0.0,
        probe_report: report,
    })
}
