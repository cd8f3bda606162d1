//! Balayage of atomic charges and subharmonic potentials onto closed
//! systems of rays, with exact harmonic-measure kernels and growth
//! diagnostics.

pub mod balayage;
pub mod charges;
pub mod complex_json;
pub mod error;
pub mod ext;
pub mod growth_scales;
pub mod harmonic_measure;
pub mod quad;
pub mod ray_geometry;
pub mod regular_growth;
pub mod step;
pub mod subharmonic;
pub mod trend;

pub use error::{Error, Result};
pub use ext::ExtReal;
pub use num_complex::Complex64;
