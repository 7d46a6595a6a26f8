//! Time integration of the competition model and its porous-medium variant: the
//! explicit L1 path, the spectral Duhamel path for p = 2, and comparison runs.

mod comparison;
mod history;
mod params;
mod spectral;
mod stepper;
mod trajectory;

pub use comparison::{comparison_experiment, ComparisonReport, COMPARISON_TOL};
pub use history::FieldHistory;
pub use params::SimParams;
pub use spectral::{operator_bound_check, spectral_duhamel_run, spectral_duhamel_with, OperatorBoundReport, SpectralOperator};
pub use stepper::{run, run_porous, step, Stepper};
pub use trajectory::{Snapshot, Status, Trajectory, POSITIVITY_TOL};
