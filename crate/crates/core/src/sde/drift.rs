use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::rng::aux_stream;

type DriftFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// A drift `b: R^d → R^d` together with its declared Hölder exponent and a
/// declared bound on `‖b‖_{C^β} = sup|b| + [b]_β`.
#[derive(Clone)]
pub struct DriftSpec {
    name: String,
    dim: usize,
    beta: f64,
    cbeta_bound: f64,
    eval: Arc<DriftFn>,
}

impl fmt::Debug for DriftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DriftSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("beta", &self.beta)
            .field("cbeta_bound", &self.cbeta_bound)
            .finish()
    }
}

/// Side length of the box `[-R, R]^d` on which drifts are certified.
pub const CERTIFICATION_BOX: f64 = 2.0;

impl DriftSpec {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        beta: f64,
        cbeta_bound: f64,
        eval: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(domain("drift dimension must be positive"));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(domain(format!("Hölder exponent must lie in (0, 1], got {beta}")));
        }
        if !(cbeta_bound >= 0.0) {
            return Err(domain("C^β bound must be nonnegative"));
        }
        Ok(Self {
            name: name.into(),
            dim,
            beta,
            cbeta_bound,
            eval: Arc::new(eval),
        })
    }

    /// `b ≡ 0`.
    pub fn zero(dim: usize) -> Self {
        Self::new("zero", dim, 1.0, 0.0, |_, out| out.fill(0.0)).expect("valid zero drift")
    }

    /// `b ≡ c`.
    pub fn constant(value: Vec<f64>) -> Result<Self> {
        let bound = value.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dim = value.len();
        Self::new("constant", dim, 1.0, bound, move |_, out| out.copy_from_slice(&value))
    }

    /// `b(x) = rate·x`. Unbounded, so `cbeta_bound` refers to the certification box.
    pub fn linear(rate: f64, dim: usize) -> Result<Self> {
        let bound = rate.abs() * (CERTIFICATION_BOX * (dim as f64).sqrt() + 1.0);
        Self::new("linear", dim, 1.0, bound, move |x, out| {
            for (o, xi) in out.iter_mut().zip(x) {
                *o = rate * xi;
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn cbeta_bound(&self) -> f64 {
        self.cbeta_bound
    }

    #[inline]
    pub fn evaluate(&self, x: &[f64], out: &mut [f64]) {
        (self.eval)(x, out)
    }
}

/// Componentwise Hölder drift `b_i(x) = sign(x_i)·min(|x_i|, 1)^β`.
///
/// Each component is bounded by 1 with Hölder seminorm at most `2^{1-β}`; in
/// the Euclidean norm this gives `‖b‖_{C^β} ≤ √d (1 + 2^{1-β})`.
pub fn make_holder_drift(beta: f64, dim: usize) -> Result<DriftSpec> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(domain(format!("Hölder exponent must lie in (0, 1), got {beta}")));
    }
    let bound = (dim as f64).sqrt() * (1.0 + 2f64.powf(1.0 - beta));
    DriftSpec::new("holder", dim, beta, bound, move |x, out| {
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = xi.signum() * xi.abs().min(1.0).powf(beta);
            if xi == 0.0 {
                *o = 0.0;
            }
        }
    })
}

/// Outcome of a probe-grid scan of a drift on `[-R, R]^d`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolderScan {
    pub max_abs: f64,
    pub max_ratio: f64,
    /// `cbeta_bound - (max_abs + max_ratio)`.
    pub margin: f64,
}

impl HolderScan {
    pub fn passes(&self, tol: f64) -> bool {
        self.margin >= -tol
    }
}

/// Scans `pairs` random probe pairs (plus the points themselves) in
/// `[-R, R]^d`, with separations spread log-uniformly down to `1e-9`.
pub fn certify_drift(drift: &DriftSpec, pairs: usize, seed: u64) -> HolderScan {
    let d = drift.dim();
    let r = CERTIFICATION_BOX;
    let mut rng = aux_stream(seed, 0xd21f7);
    let mut x = vec![0.0; d];
    let mut y = vec![0.0; d];
    let mut bx = vec![0.0; d];
    let mut by = vec![0.0; d];
    let mut max_abs: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    for k in 0..pairs {
        for xi in x.iter_mut() {
            *xi = rng.random_range(-r..=r);
        }
        // a third of the probes straddle the origin where the drift is least regular
        if k % 3 == 0 {
            for xi in x.iter_mut() {
                *xi *= 1e-3;
            }
        }
        let sep = 10f64.powf(rng.random_range(-9.0..0.7));
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = (xi + sep * rng.random_range(-1.0..=1.0)).clamp(-r, r);
        }
        drift.evaluate(&x, &mut bx);
        drift.evaluate(&y, &mut by);
        max_abs = max_abs.max(norm(&bx)).max(norm(&by));
        let dist: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if dist > 0.0 {
            let diff: f64 = bx.iter().zip(&by).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            max_ratio = max_ratio.max(diff / dist.powf(drift.beta()));
        }
    }
    HolderScan {
        max_abs,
        max_ratio,
        margin: drift.cbeta_bound() - (max_abs + max_ratio),
    }
}
