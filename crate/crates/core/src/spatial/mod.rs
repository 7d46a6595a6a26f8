//! Grids, fields, the discrete fractional p-Laplacian with zero exterior extension,
//! Gagliardo seminorms, competition convolution, reaction term and empirical
//! inequality constants.

mod estimators;
mod field;
mod grid;
pub mod io;
mod kernel;
mod operator;
mod seminorm;
mod toeplitz;

pub use estimators::{
    estimate_gn_constant, estimate_sobolev_constant, gn_ratio, inequality_233_constant, inequality_233_ratio,
    sobolev_ratio, trial_field, ConstantEstimate, GnExponents,
};
pub use field::Field;
pub use grid::{Grid, Region};
pub use kernel::{convolve, convolve_direct, reaction, Kernel, KernelShape};
pub use operator::{
    exterior_tail, frac_p_laplacian, phi, FracPLaplacian, LinearFastPath, OperatorParams, SingularMode, TailMode,
};
pub use seminorm::{energy, gagliardo_seminorm, gagliardo_seminorm_full, pairing_identity_residual, PairingReport};
pub use toeplitz::ToeplitzConv;
