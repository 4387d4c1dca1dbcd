#![allow(dead_code)]

use std::f64::consts::PI;

/// Asymptotic Kolmogorov–Smirnov critical value at the 1% level.
pub const KS_CRIT_1PCT: f64 = 1.628;

/// `sup_x |F_n(x) - cdf(x)|` for a sample.
pub fn ks_one_sample(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample KS distance.
pub fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

pub fn ks_two_sample_critical(na: usize, nb: usize) -> f64 {
    let (na, nb) = (na as f64, nb as f64);
    KS_CRIT_1PCT * ((na + nb) / (na * nb)).sqrt()
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Spectral energy `(dx/N) Σ_k |k/L|^α |ĝ_k|²` by a direct O(N²) DFT.
pub fn naive_fractional_energy(samples: &[f64], period_scale: f64, alpha: f64) -> f64 {
    let n = samples.len();
    let dx = 2.0 * PI * period_scale / n as f64;
    let mut total = 0.0;
    for k in 0..n {
        let (mut re, mut im) = (0.0, 0.0);
        for (m, &x) in samples.iter().enumerate() {
            let phase = -2.0 * PI * ((k * m) % n) as f64 / n as f64;
            re += x * phase.cos();
            im += x * phase.sin();
        }
        let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        let xi = kk.abs() / period_scale;
        if xi > 0.0 {
            total += xi.powf(alpha) * (re * re + im * im);
        }
    }
    total * dx / n as f64
}
