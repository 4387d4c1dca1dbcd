use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::measure::{sphere_area, stable_density_constant};
use super::stable::tail_constant;
use crate::error::{domain, Error, Result};

/// Shape of the driving noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Rotationally invariant stable law, `E e^{iξ·Z_t} = exp(-t σ^α |ξ|^α)`.
    Isotropic,
    /// Independent symmetric stable coordinates, `exp(-t σ^α Σ_i |ξ_i|^α)`.
    /// The Lévy measure lives on the coordinate axes, so it is singular with
    /// respect to Lebesgue measure whenever `dim ≥ 2`.
    Cylindrical,
    /// Brownian limit `α = 2`: `Z_t ~ N(0, 2σ²t·I)`.
    Gaussian,
}

/// A symmetric stable driver.
///
/// The parametrization is `E e^{iξ·Z_t} = exp(-t σ^α |ξ|^α)` (isotropic),
/// so `α = 2` gives `N(0, 2σ²t)` per coordinate, not the standard Brownian
/// motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct LevyModel {
    alpha: f64,
    dim: usize,
    flavor: Flavor,
    scale: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    alpha: f64,
    dim: usize,
    flavor: Flavor,
    #[serde(default = "one")]
    scale: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawModel> for LevyModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        LevyModel::new(raw.alpha, raw.dim, raw.flavor, raw.scale)
    }
}

impl From<LevyModel> for RawModel {
    fn from(m: LevyModel) -> Self {
        RawModel {
            alpha: m.alpha,
            dim: m.dim,
            flavor: m.flavor,
            scale: m.scale,
        }
    }
}

impl LevyModel {
    pub fn new(alpha: f64, dim: usize, flavor: Flavor, scale: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(domain(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if flavor == Flavor::Gaussian && alpha != 2.0 {
            return Err(domain(format!(
                "gaussian flavor requires alpha = 2, got {alpha}"
            )));
        }
        if dim == 0 {
            return Err(domain("dimension must be positive"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(domain(format!("scale must be positive, got {scale}")));
        }
        Ok(Self {
            alpha,
            dim,
            flavor,
            scale,
        })
    }

    pub fn isotropic(alpha: f64, dim: usize) -> Result<Self> {
        Self::new(alpha, dim, Flavor::Isotropic, 1.0)
    }

    pub fn cylindrical(alpha: f64, dim: usize) -> Result<Self> {
        Self::new(alpha, dim, Flavor::Cylindrical, 1.0)
    }

    pub fn gaussian(dim: usize) -> Result<Self> {
        Self::new(2.0, dim, Flavor::Gaussian, 1.0)
    }

    pub fn with_scale(self, scale: f64) -> Result<Self> {
        Self::new(self.alpha, self.dim, self.flavor, scale)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Lévy mass of `{|z| > 1}`, so that `P(|Z_1| > x) ~ tail_mass·x^{-α}`
    /// as `x → ∞`. `None` for the Gaussian limit.
    pub fn tail_mass(&self) -> Option<f64> {
        let sa = self.scale.powf(self.alpha);
        match self.flavor {
            Flavor::Gaussian => None,
            Flavor::Isotropic => {
                Some(sa * stable_density_constant(self.dim, self.alpha) * sphere_area(self.dim) / self.alpha)
            }
            Flavor::Cylindrical => Some(sa * self.dim as f64 * tail_constant(self.alpha)),
        }
    }

    /// Closed-form characteristic exponent `ψ(ξ) = log E e^{iξ·Z_1}`.
    pub fn char_exponent(&self, xi: &[f64]) -> Result<Complex64> {
        if xi.len() != self.dim {
            return Err(crate::error::argument(format!(
                "xi has {} components, model dimension is {}",
                xi.len(),
                self.dim
            )));
        }
        let sa = self.scale.powf(self.alpha);
        let re = match self.flavor {
            Flavor::Isotropic | Flavor::Gaussian => {
                let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                sa * norm.powf(self.alpha)
            }
            Flavor::Cylindrical => sa * xi.iter().map(|x| x.abs().powf(self.alpha)).sum::<f64>(),
        };
        Ok(Complex64::new(-re, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(LevyModel::isotropic(0.0, 1).is_err());
        assert!(LevyModel::isotropic(2.1, 1).is_err());
        assert!(LevyModel::new(1.5, 1, Flavor::Gaussian, 1.0).is_err());
        assert!(LevyModel::new(1.5, 1, Flavor::Isotropic, 0.0).is_err());
        assert!(LevyModel::isotropic(1.5, 0).is_err());
        assert!(LevyModel::isotropic(2.0, 3).is_ok());
    }

    #[test]
    fn exponent_closed_forms() {
        let iso = LevyModel::isotropic(1.5, 2).unwrap();
        let v = iso.char_exponent(&[2.0, 0.0]).unwrap();
        assert!((v.re + 2f64.powf(1.5)).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
        let cyl = LevyModel::cylindrical(1.0, 2).unwrap();
        assert!((cyl.char_exponent(&[1.0, 1.0]).unwrap().re + 2.0).abs() < 1e-15);
        assert_eq!(iso.char_exponent(&[0.0, 0.0]).unwrap().re, 0.0);
    }

    #[test]
    fn tail_mass_in_one_dimension_is_the_stable_tail_constant() {
        for &a in &[0.5, 1.0, 1.5] {
            let iso = LevyModel::isotropic(a, 1).unwrap().tail_mass().unwrap();
            let cyl = LevyModel::cylindrical(a, 1).unwrap().tail_mass().unwrap();
            assert!((iso - tail_constant(a)).abs() < 1e-12);
            assert!((cyl - tail_constant(a)).abs() < 1e-12);
        }
        assert!(LevyModel::gaussian(1).unwrap().tail_mass().is_none());
    }

    #[test]
    fn serde_validates() {
        let ok: LevyModel =
            serde_json::from_str(r#"{"alpha":1.5,"dim":2,"flavor":"cylindrical"}"#).unwrap();
        assert_eq!(ok.scale(), 1.0);
        assert!(serde_json::from_str::<LevyModel>(r#"{"alpha":1.5,"dim":2,"flavor":"gaussian"}"#).is_err());
    }
}
