use serde::Serialize;

use super::torus::PeriodicFunction;
use crate::error::{argument, Result};

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`, `C^∞` in between.
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

/// Radial cutoff χ: 1 on `|ξ| ≤ 3/4`, 0 on `|ξ| ≥ 1`.
pub fn cutoff(r: f64) -> f64 {
    1.0 - smooth_step((r.abs() - 0.75) * 4.0)
}

/// Annulus profile `φ(ξ) = χ(ξ) - χ(2ξ)`, supported in `3/8 < |ξ| < 1`.
pub fn annulus(r: f64) -> f64 {
    cutoff(r) - cutoff(2.0 * r)
}

/// Fourier multiplier of block `j`: `χ(2ξ)` for `j = -1`, `φ(2^{-j}ξ)` for `j ≥ 0`.
pub fn block_multiplier(j: i32, r: f64) -> f64 {
    if j < 0 {
        cutoff(2.0 * r)
    } else {
        annulus(r * 2f64.powi(-j))
    }
}

/// One Littlewood–Paley piece `Δ_j f`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicBlock {
    pub j: i32,
    pub block: PeriodicFunction,
}

pub fn dyadic_block(f: &PeriodicFunction, j: i32) -> Result<DyadicBlock> {
    if j < -1 {
        return Err(argument(format!("block index must be ≥ -1, got {j}")));
    }
    Ok(DyadicBlock {
        j,
        block: f.apply_multiplier(|r| block_multiplier(j, r)),
    })
}

/// Index of the last block needed to resolve every grid frequency: the
/// smallest `J` with `χ(2^{-J} ξ_nyquist) = 1`.
pub fn max_block(f: &PeriodicFunction) -> i32 {
    let mut j = -1;
    while 2f64.powi(j) * 0.75 < f.nyquist() {
        j += 1;
    }
    j
}

/// All blocks `Δ_{-1} f, …, Δ_J f`; they sum to `f`.
pub fn decompose(f: &PeriodicFunction) -> Vec<DyadicBlock> {
    (-1..=max_block(f))
        .map(|j| dyadic_block(f, j).expect("j ≥ -1"))
        .collect()
}

/// Per-block contributions to a Besov norm.
#[derive(Debug, Clone, Serialize)]
pub struct BesovTerm {
    pub j: i32,
    /// `2^{js} ‖Δ_j f‖_p`
    pub weighted_norm: f64,
}

/// `‖f‖_{B^s_{p,p}} = (Σ_j 2^{jsp} ‖Δ_j f‖_p^p)^{1/p}`, or
/// `sup_j 2^{js} ‖Δ_j f‖_∞` for `p = ∞`, over the blocks the grid resolves.
pub fn besov_norm(f: &PeriodicFunction, s: f64, p: f64) -> Result<f64> {
    Ok(besov_terms(f, s, p)?.1)
}

pub fn besov_terms(f: &PeriodicFunction, s: f64, p: f64) -> Result<(Vec<BesovTerm>, f64)> {
    if !(p >= 1.0) {
        return Err(argument(format!("Besov integrability p must lie in [1, ∞], got {p}")));
    }
    let terms: Vec<BesovTerm> = decompose(f)
        .into_iter()
        .map(|b| BesovTerm {
            j: b.j,
            weighted_norm: 2f64.powf(b.j as f64 * s) * b.block.lp_norm(p),
        })
        .collect();
    let norm = if p.is_infinite() {
        terms.iter().fold(0.0_f64, |m, t| m.max(t.weighted_norm))
    } else {
        terms.iter().map(|t| t.weighted_norm.powf(p)).sum::<f64>().powf(1.0 / p)
    };
    Ok((terms, norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_profile() {
        assert_eq!(cutoff(0.0), 1.0);
        assert_eq!(cutoff(0.75), 1.0);
        assert_eq!(cutoff(1.0), 0.0);
        assert_eq!(cutoff(-2.0), 0.0);
        assert!(cutoff(0.8) < 1.0 && cutoff(0.8) > 0.0);
        assert_eq!(annulus(0.375), 0.0);
        assert_eq!(annulus(0.5), 1.0);
        assert_eq!(annulus(1.0), 0.0);
    }

    #[test]
    fn multipliers_telescope() {
        for i in 0..2000 {
            let r = i as f64 * 0.37;
            let total: f64 = (-1..=14).map(|j| block_multiplier(j, r)).sum();
            assert!((total - cutoff(r * 2f64.powi(-14))).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_negative_index() {
        let f = PeriodicFunction::new(vec![1.0; 16], 1.0).unwrap();
        assert!(dyadic_block(&f, -2).is_err());
        assert!(besov_norm(&f, 0.5, 0.5).is_err());
    }
}
