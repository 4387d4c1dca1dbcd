//! Adaptive Gauss–Kronrod quadrature with the half-line and oscillatory-tail
//! helpers needed to integrate Lévy-measure densities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Tolerances for [`Quadrature::integrate`]. Convergence is declared when the
/// summed Kronrod–Gauss discrepancy drops below `max(abs_tol, rel_tol·|I|)`.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
pub fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half.abs())
}

impl Quadrature {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over the finite interval `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> Result<Estimate> {
        if a == b {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                intervals: 0,
            });
        }
        let (value, error) = kronrod15(&mut f, a, b);
        let mut heap = BinaryHeap::new();
        heap.push(Segment { a, b, value, error });
        let mut total = value;
        let mut total_err = error;
        loop {
            if !total.is_finite() {
                return Err(Error::Numeric(format!(
                    "non-finite integrand on [{a}, {b}]"
                )));
            }
            if total_err <= self.abs_tol.max(self.rel_tol * total.abs()) {
                return Ok(Estimate {
                    value: total,
                    error: total_err,
                    intervals: heap.len(),
                });
            }
            if heap.len() >= self.max_intervals {
                return Err(Error::Numeric(format!(
                    "[{a}, {b}]: estimate {total:.6e} with error {total_err:.3e} after {} intervals (rel tol {:.1e})",
                    heap.len(),
                    self.rel_tol
                )));
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
                return Err(Error::Numeric(format!(
                    "interval [{}, {}] cannot be bisected further (error {total_err:.3e})",
                    worst.a, worst.b
                )));
            }
            let (lv, le) = kronrod15(&mut f, worst.a, mid);
            let (rv, re) = kronrod15(&mut f, mid, worst.b);
            total += lv + rv - worst.value;
            total_err += le + re - worst.error;
            heap.push(Segment {
                a: worst.a,
                b: mid,
                value: lv,
                error: le,
            });
            heap.push(Segment {
                a: mid,
                b: worst.b,
                value: rv,
                error: re,
            });
        }
    }

    /// `∫_0^ρ f(r) dr` for integrands with an integrable power singularity
    /// at the origin. Uses `r = ρ e^{-s}` followed by `s = t/(1-t)`.
    pub fn integrate_from_origin<F: FnMut(f64) -> f64>(&self, mut f: F, rho: f64) -> Result<Estimate> {
        self.integrate(
            |t| {
                let s = t / (1.0 - t);
                let r = rho * (-s).exp();
                if r == 0.0 {
                    return 0.0;
                }
                // 0·∞ from underflowing powers deep inside the origin layer
                let v = f(r) * r / ((1.0 - t) * (1.0 - t));
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            },
            0.0,
            1.0,
        )
    }

    /// `∫_R^∞ f(r) dr` for integrands with power-law decay, via `r = R e^{s}`.
    pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(&self, mut f: F, start: f64) -> Result<Estimate> {
        self.integrate(
            |t| {
                let s = t / (1.0 - t);
                let r = start * s.exp();
                if !r.is_finite() {
                    return 0.0;
                }
                let v = f(r) * r / ((1.0 - t) * (1.0 - t));
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            },
            0.0,
            1.0,
        )
    }

    /// `∫_start^∞ f(u) du` for an oscillating, decaying integrand whose sign
    /// pattern repeats every `2·half_period`. Half-period pieces are summed and
    /// the partial sums extrapolated with Wynn's epsilon algorithm.
    pub fn integrate_oscillatory_tail<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        start: f64,
        half_period: f64,
        scale: f64,
    ) -> Result<Estimate> {
        const MAX_TERMS: usize = 400;
        let mut partial = Vec::with_capacity(64);
        let mut sum = 0.0;
        let mut prev: Option<f64> = None;
        let mut stable = 0;
        let mut intervals = 0;
        for m in 0..MAX_TERMS {
            let a = start + m as f64 * half_period;
            let piece = self.integrate(&mut f, a, a + half_period)?;
            intervals += piece.intervals;
            sum += piece.value;
            partial.push(sum);
            if partial.len() < 6 {
                continue;
            }
            let est = wynn_epsilon(&partial);
            if let Some(p) = prev {
                let tol = self.abs_tol.max(self.rel_tol * scale.abs().max(est.abs()));
                if (est - p).abs() <= tol {
                    stable += 1;
                    if stable >= 2 {
                        return Ok(Estimate {
                            value: est,
                            error: (est - p).abs(),
                            intervals,
                        });
                    }
                } else {
                    stable = 0;
                }
            }
            prev = Some(est);
        }
        Err(Error::Numeric(format!(
            "oscillatory tail from {start} did not settle after {MAX_TERMS} half periods"
        )))
    }
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
pub fn wynn_epsilon(partial: &[f64]) -> f64 {
    let n = partial.len();
    if n < 3 {
        return *partial.last().unwrap_or(&0.0);
    }
    // prev_col = ε_{j-1}, cur_col = ε_j, both indexed by k.
    let mut prev_col = vec![0.0; n + 1];
    let mut cur_col = partial.to_vec();
    let mut best = partial[n - 1];
    let mut j = 0;
    while cur_col.len() > 1 {
        let mut next = Vec::with_capacity(cur_col.len() - 1);
        for k in 0..cur_col.len() - 1 {
            let diff = cur_col[k + 1] - cur_col[k];
            if diff == 0.0 {
                return if j % 2 == 0 { cur_col[k + 1] } else { best };
            }
            next.push(prev_col[k + 1] + 1.0 / diff);
        }
        prev_col = cur_col;
        cur_col = next;
        j += 1;
        if j % 2 == 0 {
            if let Some(&v) = cur_col.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = Quadrature::default();
        let est = q.integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((est.value - exact).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_from_origin() {
        // ∫_0^ρ r^{-1/2} dr = 2√ρ
        let q = Quadrature::default();
        let est = q.integrate_from_origin(|r| r.powf(-0.5), 0.3).unwrap();
        assert!((est.value - 2.0 * 0.3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn power_tail_to_infinity() {
        // ∫_2^∞ r^{-1.3} dr = 2^{-0.3}/0.3
        let q = Quadrature::default();
        let est = q.integrate_to_infinity(|r| r.powf(-1.3), 2.0).unwrap();
        let exact = 2f64.powf(-0.3) / 0.3;
        assert!((est.value / exact - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oscillatory_tail_matches_dirichlet_integral() {
        // ∫_0^∞ sin(u)/u du = π/2; split at π.
        let q = Quadrature::default();
        let head = q.integrate(|u| if u == 0.0 { 1.0 } else { u.sin() / u }, 0.0, std::f64::consts::PI).unwrap();
        let tail = q
            .integrate_oscillatory_tail(|u| u.sin() / u, std::f64::consts::PI, std::f64::consts::PI, 1.0)
            .unwrap();
        assert!((head.value + tail.value - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn wynn_accelerates_alternating_harmonic() {
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&partial) - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn reports_non_convergence() {
        let q = Quadrature {
            max_intervals: 8,
            ..Quadrature::default()
        };
        let err = q.integrate(|x| (1.0 / x).sin(), 1e-6, 1.0).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)));
    }
}
