//! Quantities from the analysis evaluated on fields and trajectories: local masses,
//! steady roots and the Lyapunov pair, blow-up windows, decay fits, L^q trackers,
//! weighted masses and inequality residuals.

mod blowup;
mod decay;
mod inequality;
mod moser;
mod report;
mod roots;
mod weights;

pub use blowup::{blowup_functional, blowup_window, BlowupFunctional, BlowupWindow};
pub use decay::{decay_fit, decay_fit_series, DecayFit, EnvelopeFit, EnvelopeKind};
pub use inequality::{inequality_11_residual, LocalEnergyReport, LocalEnergyTerms};
pub use moser::{ln_power_integral, moser_tracker, q_k, MoserConstants, MoserTable};
pub use report::{matrix_csv, CheckRow};
pub use roots::{local_mass, lyapunov, steady_roots, SteadyRoots};
pub use weights::{
    holder_mass_check, in_admissible_band, m_operator, weight_class_constant, weighted_mass, HolderReport,
    WeightClassReport, WeightFunction, WeightKind,
};
