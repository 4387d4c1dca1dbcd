use std::cell::RefCell;
use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{argument, Result};
use crate::rng::{aux_stream, std_normal};

/// Real samples on the uniform grid `x_m = 2πL·m/N` of the torus of
/// circumference `2πL`. Discrete frequencies are `ξ_k = k/L`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    samples: Vec<f64>,
    period_scale: f64,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

impl PeriodicFunction {
    pub fn new(samples: Vec<f64>, period_scale: f64) -> Result<Self> {
        let n = samples.len();
        if n < 4 || !n.is_power_of_two() {
            return Err(argument(format!("grid size must be a power of two ≥ 4, got {n}")));
        }
        if !(period_scale > 0.0 && period_scale.is_finite()) {
            return Err(argument(format!("period scale must be positive, got {period_scale}")));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(argument("samples must be finite"));
        }
        Ok(Self {
            samples,
            period_scale,
        })
    }

    /// Samples `f(x_m)`.
    pub fn from_fn(grid_size: usize, period_scale: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let dx = 2.0 * PI * period_scale / grid_size as f64;
        Self::new((0..grid_size).map(|m| f(m as f64 * dx)).collect(), period_scale)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn period_scale(&self) -> f64 {
        self.period_scale
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    /// Torus measure `2πL`.
    pub fn measure(&self) -> f64 {
        2.0 * PI * self.period_scale
    }

    pub fn dx(&self) -> f64 {
        self.measure() / self.grid_size() as f64
    }

    /// Largest resolved frequency `N / (2L)`.
    pub fn nyquist(&self) -> f64 {
        self.grid_size() as f64 / (2.0 * self.period_scale)
    }

    /// `|ξ_k|` for FFT index `k`.
    pub fn frequency(&self, k: usize) -> f64 {
        let n = self.grid_size();
        let signed = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        signed.abs() / self.period_scale
    }

    pub(crate) fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            samples,
            period_scale: self.period_scale,
        }
    }

    /// Unnormalized DFT `f̂_k = Σ_m f_m e^{-2πikm/N}`.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = self.samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(&mut buf));
        buf
    }

    /// Applies the even Fourier multiplier `m(|ξ|)`.
    pub fn apply_multiplier(&self, m: impl Fn(f64) -> f64) -> Self {
        let mut spec = self.spectrum();
        for (k, c) in spec.iter_mut().enumerate() {
            *c *= m(self.frequency(k));
        }
        self.with_samples(inverse_real(spec))
    }

    /// `(∫ |f|^p dx)^{1/p}` by the grid rule; `p = ∞` gives the max norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            self.samples.iter().fold(0.0, |m, x| m.max(x.abs()))
        } else {
            self.lp_norm_pow(p).powf(1.0 / p)
        }
    }

    /// `∫ |f|^p dx`.
    pub fn lp_norm_pow(&self, p: f64) -> f64 {
        self.samples.iter().map(|x| x.abs().powf(p)).sum::<f64>() * self.dx()
    }

    pub fn max_abs(&self) -> f64 {
        self.lp_norm(f64::INFINITY)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.with_samples(self.samples.iter().map(|x| x * factor).collect())
    }
}

pub(crate) fn inverse_real(mut spec: Vec<Complex64>) -> Vec<f64> {
    let n = spec.len();
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n).process(&mut spec));
    spec.iter().map(|c| c.re / n as f64).collect()
}

/// Random trigonometric polynomial with Gaussian coefficients on every mode
/// `0 < |ξ_k| ≤ band`, normalized to unit root-mean-square. Different
/// `index` values under one `seed` give independent functions.
pub fn band_limited_random(
    grid_size: usize,
    period_scale: f64,
    band: f64,
    seed: u64,
    index: u64,
) -> Result<PeriodicFunction> {
    if !grid_size.is_power_of_two() || grid_size < 4 {
        return Err(argument(format!("grid size must be a power of two ≥ 4, got {grid_size}")));
    }
    let max_k = (band * period_scale).floor() as usize;
    if max_k == 0 || max_k >= grid_size / 2 {
        return Err(argument(format!(
            "band {band} must contain a nonzero mode and stay below the Nyquist frequency"
        )));
    }
    let mut rng = aux_stream(seed, (0x7e57 << 32) | index);
    let mut spec = vec![Complex64::new(0.0, 0.0); grid_size];
    for k in 1..=max_k {
        let c = Complex64::new(std_normal(&mut rng), std_normal(&mut rng));
        spec[k] = c;
        spec[grid_size - k] = c.conj();
    }
    let samples = inverse_real(spec);
    let rms = (samples.iter().map(|x| x * x).sum::<f64>() / grid_size as f64).sqrt();
    PeriodicFunction::new(samples.into_iter().map(|x| x / rms).collect(), period_scale)
}
