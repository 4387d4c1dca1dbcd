use super::torus::PeriodicFunction;
use crate::error::{domain, Result};

/// `(-Δ)^{order/2} f`, the Fourier multiplier `|ξ|^{order}`.
pub fn frac_laplacian(f: &PeriodicFunction, order: f64) -> Result<PeriodicFunction> {
    if !(order > 0.0 && order <= 2.0) {
        return Err(domain(format!("order must lie in (0, 2], got {order}")));
    }
    Ok(f.apply_multiplier(|r| r.powf(order)))
}
