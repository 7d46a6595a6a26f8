use crate::error::{Error, Result};
use crate::evolution::Trajectory;
use crate::fractional_time::{caputo_l1_series, BoundCurve};
use crate::spatial::{gagliardo_seminorm, Region};

/// Terms of the local L^2 energy inequality on a cube B at one stored time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalEnergyTerms {
    pub t: f64,
    /// L1 Caputo derivative of int_B u^2.
    pub caputo: f64,
    /// [u]^p over B x B.
    pub seminorm: f64,
    /// 2 mu int_B u^3
    pub cubic: f64,
    /// 2 mu eta k int_B u^3 int_B u
    pub coupling: f64,
    /// 2 gamma int_B u^2
    pub damping: f64,
    /// caputo + seminorm - (cubic - coupling - damping); <= 0 when the inequality holds.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalEnergyReport {
    pub curve: BoundCurve,
    pub terms: Vec<LocalEnergyTerms>,
    pub max_positive: f64,
    /// Largest sum of term magnitudes, the natural size of a rounding-level residual.
    pub scale: f64,
}

impl LocalEnergyReport {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_positive / self.scale
        } else {
            0.0
        }
    }
}

/// Residual of D^alpha int_B u^2 + [u]^p_B <= 2mu int_B u^3 - 2mu eta k int_B u^3 int_B u - 2gamma int_B u^2
/// at every stored step after t = 0. Integrals over B are node sums over the nodes
/// inside the cube, matching the seminorm. Needs every step stored.
pub fn inequality_11_residual(traj: &Trajectory, eta: f64, center: [f64; 2], delta: f64) -> Result<LocalEnergyReport> {
    let snaps = &traj.snapshots;
    if snaps.len() < 2 || snaps.iter().enumerate().any(|(i, s)| s.step != i) {
        return Err(Error::Data("local energy residual needs every step stored (store_stride = 1)".into()));
    }
    let region = Region::cube(center, delta);
    region.check_inside(&traj.grid)?;
    let nodes = region.nodes(&traj.grid);
    let hv = traj.grid.cell_volume();
    let p = &traj.params;
    let moments = |k: i32, vals: &[f64]| nodes.iter().map(|&i| vals[i].powi(k)).sum::<f64>() * hv;
    let w: Vec<f64> = snaps.iter().map(|s| moments(2, &s.field.values)).collect();
    let dw = caputo_l1_series(p.alpha, p.dt, &w)?;
    let mut terms = Vec::with_capacity(snaps.len() - 1);
    for (n, s) in snaps.iter().enumerate().skip(1) {
        let u = &s.field;
        let seminorm = gagliardo_seminorm(u, p.op.s, p.op.p, &region)?;
        let m1 = moments(1, &u.values);
        let m3 = moments(3, &u.values);
        let cubic = 2.0 * p.mu * m3;
        let coupling = 2.0 * p.mu * eta * p.k * m3 * m1;
        let damping = 2.0 * p.gamma * w[n];
        let residual = dw[n] + seminorm - (cubic - coupling - damping);
        terms.push(LocalEnergyTerms { t: s.t, caputo: dw[n], seminorm, cubic, coupling, damping, residual });
    }
    let max_positive = terms.iter().map(|t| t.residual).fold(0.0, f64::max);
    let scale = terms
        .iter()
        .map(|t| t.caputo.abs() + t.seminorm + t.cubic + t.coupling + t.damping)
        .fold(0.0, f64::max);
    let curve = BoundCurve::new(
        terms.iter().map(|t| t.t).collect(),
        terms.iter().map(|t| t.residual).collect(),
        "local-energy-residual",
        "D^alpha int_B u^2 + [u]^p_B - 2mu int_B u^3 + 2mu eta k int_B u^3 int_B u + 2gamma int_B u^2",
    );
    Ok(LocalEnergyReport { curve, terms, max_positive, scale })
}
