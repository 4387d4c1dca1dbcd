use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::error::{domain, Result};
use crate::rng::{exp1, open01};

/// One draw of the standard symmetric α-stable law, `E e^{iξX} = exp(-|ξ|^α)`,
/// by the Chambers–Mallows–Stuck transform. `α = 2` yields `N(0, 2)`.
pub fn cms_sample<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain(format!("stability index must lie in (0, 2], got {alpha}")));
    }
    Ok(symmetric_stable(alpha, rng))
}

#[inline]
pub(crate) fn symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let v = PI * (open01(rng) - 0.5);
    let w = exp1(rng);
    if alpha == 1.0 {
        return v.tan();
    }
    let cos_v = v.cos();
    let head = (alpha * v).sin() / cos_v.powf(1.0 / alpha);
    let tail = (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha);
    head * tail
}

/// Positive stable variate with Laplace transform `E e^{-λS} = exp(-λ^a)`,
/// `a ∈ (0, 1]` (Kanter's representation of the totally skewed CMS case).
pub fn positive_stable<R: Rng + ?Sized>(a: f64, rng: &mut R) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(domain(format!("subordinator index must lie in (0, 1], got {a}")));
    }
    Ok(positive_stable_unchecked(a, rng))
}

#[inline]
pub(crate) fn positive_stable_unchecked<R: Rng + ?Sized>(a: f64, rng: &mut R) -> f64 {
    if a == 1.0 {
        return 1.0;
    }
    let u = PI * open01(rng);
    let w = exp1(rng);
    let head = (a * u).sin() / u.sin().powf(1.0 / a);
    let tail = (((1.0 - a) * u).sin() / w).powf((1.0 - a) / a);
    head * tail
}

/// Closed-form standard Cauchy distribution function.
pub fn cauchy_cdf(x: f64) -> f64 {
    0.5 + x.atan() / PI
}

/// Two-sided tail constant of the standard symmetric stable law:
/// `P(|X| > x) ~ tail_constant(α)·x^{-α}` as `x → ∞`, for `α < 2`.
pub fn tail_constant(alpha: f64) -> f64 {
    2.0 * statrs::function::gamma::gamma(alpha) * (FRAC_PI_2 * alpha).sin() / PI
}
