//! Caputo derivatives (L1 scheme), Riemann-Liouville integrals, scalar fractional
//! ODE solvers and closed-form fractional differential-inequality bounds.

mod bounds;
mod l1;
mod scalar;

pub use bounds::{
    bound_gronwall, bound_lemma_4554, bound_lemma_7700, bound_moser_recursion,
    ln_bound_moser_recursion, BoundCurve, Lemma4554, Lemma4554Terms, MlKernel,
};
pub use l1::{caputo_l1, caputo_l1_series, l1_scale, l1_weights, rl_integral, CaputoHistory};
pub use scalar::{singular_exponents, solve_relaxation, solve_scalar, step_scalar_implicit};
