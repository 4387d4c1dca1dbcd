//! The Euler–Maruyama scheme `X^n_t = X^n_0 + ∫_0^t b(X^n_{k_n(s)}) ds + Z_t`
//! on a shared noise path, fine-grid reference solutions, and Hölder drifts.

mod drift;
mod scheme;

pub use drift::{certify_drift, make_holder_drift, DriftSpec, HolderScan, CERTIFICATION_BOX};
pub use scheme::{euler_maruyama, kn, reference_solution, sup_distance, Trajectory};
pub(crate) use scheme::sup_distance_to_reference;
