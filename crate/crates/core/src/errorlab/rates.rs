use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Position of the moment exponent relative to the stability index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `q < α`: rate `n^{-q/α}`.
    Subcritical,
    /// `q = α`: rate `n^{-1} log n`.
    Critical,
    /// `q > α`: rate `n^{-1}`.
    Supercritical,
}

const CRITICAL_REL_TOL: f64 = 1e-9;

/// Model decay of `E(1 ∧ |Z_{1/n}|^q)` for a stable driver of index `alpha`:
/// `n^{-q/α}` for `q < α`, `n^{-1} log n` for `q = α`, `n^{-1}` for `q > α`.
///
/// `alpha = 2` is the Gaussian limit, where every moment is finite and the
/// rate is `n^{-q/2}` for all `q` (reported as subcritical).
pub fn truncated_moment_rate(alpha: f64, q: f64, n: usize) -> Result<(f64, Regime)> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain(format!("alpha must lie in (0, 2], got {alpha}")));
    }
    if !(q > 0.0) {
        return Err(domain(format!("moment exponent must be positive, got {q}")));
    }
    if n < 2 {
        return Err(domain(format!("resolution must be at least 2, got {n}")));
    }
    let nf = n as f64;
    let regime = regime_of(alpha, q);
    let value = match regime {
        Regime::Subcritical => nf.powf(-q / alpha.min(2.0)),
        Regime::Critical => nf.ln() / nf,
        Regime::Supercritical => 1.0 / nf,
    };
    Ok((value, regime))
}

/// Regime of the moment exponent `q` for index `alpha`.
pub fn regime_of(alpha: f64, q: f64) -> Regime {
    if alpha >= 2.0 {
        Regime::Subcritical
    } else if (q - alpha).abs() <= CRITICAL_REL_TOL * alpha {
        Regime::Critical
    } else if q < alpha {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}

/// Decay exponent of the strong-error bound `E(1 ∧ |Z_{1/n}|^{pβ})`, its
/// regime, and whether a `log n` factor rides on it.
pub fn theory_slope(alpha: f64, beta: f64, p: f64) -> (f64, Regime, bool) {
    let q = p * beta;
    let regime = regime_of(alpha, q);
    let slope = if alpha >= 2.0 { q / 2.0 } else { (q / alpha).min(1.0) };
    (slope, regime, regime == Regime::Critical)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_regimes() {
        let (v, r) = truncated_moment_rate(1.5, 1.0, 1024).unwrap();
        assert_eq!(r, Regime::Subcritical);
        assert!((v - 1024f64.powf(-2.0 / 3.0)).abs() < 1e-15);
        assert!((v - 0.00988).abs() < 5e-5);

        let (v, r) = truncated_moment_rate(1.0, 1.0, 20).unwrap();
        assert_eq!(r, Regime::Critical);
        assert!((v - 0.1498).abs() < 1e-4);

        let (v, r) = truncated_moment_rate(0.8, 2.0, 100).unwrap();
        assert_eq!(r, Regime::Supercritical);
        assert!((v - 0.01).abs() < 1e-15);

        assert!(truncated_moment_rate(1.5, 1.0, 1).is_err());
        assert!(truncated_moment_rate(2.5, 1.0, 4).is_err());
    }

    #[test]
    fn slope_table() {
        let (s, r, log) = theory_slope(1.5, 0.8, 2.0);
        assert_eq!((s, r, log), (1.0, Regime::Supercritical, false));
        let (s, r, _) = theory_slope(1.5, 0.8, 0.5);
        assert_eq!(r, Regime::Subcritical);
        assert!((s - 0.4 / 1.5).abs() < 1e-15);
        let (s, r, log) = theory_slope(1.5, 0.75, 2.0);
        assert_eq!((s, r, log), (1.0, Regime::Critical, true));
        let (s, r, _) = theory_slope(2.0, 1.0, 2.0);
        assert_eq!((s, r), (1.0, Regime::Subcritical));
    }
}
