//! Gamma and Mittag-Leffler functions for real arguments.

mod gamma;
mod mittag_leffler;

pub use gamma::{cos_pi, gamma, ln_gamma, rgamma, sin_pi};
pub use mittag_leffler::{
    envelope_constant, mittag_leffler, mittag_leffler2, ml_asymptotic, ml_exponential_envelope,
    ml_integral, ml_series, ml_with, Envelope, MlParams,
};
