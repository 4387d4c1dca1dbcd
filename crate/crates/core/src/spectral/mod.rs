//! One-dimensional periodic Littlewood–Paley toolkit on the torus of
//! circumference `2πL`: dyadic blocks, Besov norms, the fractional Laplacian,
//! and the Bernstein/dissipativity inequality checks.

mod fractional;
mod inequalities;
mod littlewood_paley;
mod suite;
mod torus;

pub use fractional::frac_laplacian;
pub use inequalities::{
    check_bernstein, check_dissipativity, check_dissipativity_with, fractional_energy, BernsteinReport,
    BernsteinRow, CheckStatus, DissipativityReport, DissipativityRow, BLOCK_THRESHOLD, DEFAULT_C_FLOOR,
    NONPOSITIVITY_TOL,
};
pub use littlewood_paley::{
    annulus, besov_norm, besov_terms, block_multiplier, cutoff, decompose, dyadic_block, max_block, BesovTerm,
    DyadicBlock,
};
pub use suite::{inequality_suite, SuiteCase, SuiteConfig, SuiteReport, MAX_RATIO_SPREAD, PLANCHEREL_TOL};
pub use torus::{band_limited_random, PeriodicFunction};

/// Default period scale `L` of the torus.
pub const DEFAULT_PERIOD_SCALE: f64 = 16.0;
/// Default number of grid points.
pub const DEFAULT_GRID_SIZE: usize = 1 << 14;
