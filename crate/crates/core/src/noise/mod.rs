//! Stable-type Lévy drivers: exact increment sampling on nested grids,
//! characteristic exponents and nondegeneracy probes.

mod grid;
mod measure;
mod model;
mod nondegeneracy;
mod stable;

pub use grid::{sample_increments, unit_variate, IncrementGrid};
pub use measure::{sphere_area, stable_density_constant, MeasureSpec, Normalization, RadialDensity};
pub use model::{Flavor, LevyModel};
pub use nondegeneracy::{
    check_nondegeneracy, probe_directions, NondegeneracyCertificate, ProbeConfig, ProbeKind, ProbeSample,
};
pub use stable::{cauchy_cdf, cms_sample, positive_stable, tail_constant};
