//! Euler–Maruyama simulation of `X_t = X_0 + ∫_0^t b(X_s) ds + Z_t` driven by
//! symmetric stable-type Lévy noise with Hölder drift, together with the
//! experiment tooling used to measure strong convergence rates and to check
//! the Littlewood–Paley dissipativity estimates behind them.
//!
//! * [`noise`]: exact stable increments on nested grids, characteristic
//!   exponents, nondegeneracy certificates.
//! * [`sde`]: the scheme, fine-grid reference paths, Hölder drifts.
//! * [`errorlab`]: coupled-path Monte Carlo strong errors, truncated moments,
//!   log-log rate fits.
//! * [`spectral`]: periodic Littlewood–Paley blocks, Besov norms, fractional
//!   Laplacian, Bernstein and dissipativity checks.
//! * [`cli`]: the configuration-driven runner behind the `levy-em` binary.

pub mod cli;
pub mod errorlab;
pub mod error;
pub mod noise;
pub mod quadrature;
pub mod rng;
pub mod sde;
pub mod spectral;

pub use error::{Error, Result};
