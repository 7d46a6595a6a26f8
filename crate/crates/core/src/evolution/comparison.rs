use super::params::SimParams;
use super::stepper::run;
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::spatial::{Field, Kernel};

pub const COMPARISON_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// max over common steps and nodes of (u_low - u_high)_+.
    pub max_violation: f64,
    /// Last common time compared.
    pub horizon: f64,
    pub pass: bool,
    pub low: Trajectory,
    pub high: Trajectory,
}

/// Runs both initial data with identical discretization (all steps stored) and
/// checks the ordering over the common horizon.
pub fn comparison_experiment(low: &Field, high: &Field, params: &SimParams, kernel: &Kernel) -> Result<ComparisonReport> {
    low.grid.same_as(&high.grid)?;
    if low.values.iter().zip(&high.values).any(|(a, b)| a > b) {
        return Err(Error::Domain("comparison needs u0_low <= u0_high pointwise".into()));
    }
    let mut p = *params;
    p.store_stride = 1;
    let (a, b) = rayon::join(|| run(low, &p, kernel), || run(high, &p, kernel));
    let (low_t, high_t) = (a?, b?);
    let common = low_t.snapshots.len().min(high_t.snapshots.len());
    let mut viol: f64 = 0.0;
    for i in 0..common {
        let (x, y) = (&low_t.snapshots[i].field, &high_t.snapshots[i].field);
        for (u, v) in x.values.iter().zip(&y.values) {
            viol = viol.max(u - v);
        }
    }
    let horizon = if common > 0 { low_t.snapshots[common - 1].t } else { 0.0 };
    Ok(ComparisonReport { max_violation: viol, horizon, pass: viol <= COMPARISON_TOL, low: low_t, high: high_t })
}
