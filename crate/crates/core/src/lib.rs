//! Time-fractional reaction-diffusion with fractional p-Laplacian diffusion and
//! non-local competition: special functions, L1 time stepping, non-local spatial
//! operators, first eigenpairs and trajectory diagnostics.

pub mod eigen;
pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod fractional_time;
pub mod quad;
pub mod spatial;
pub mod special;

pub use error::{Error, Result};
