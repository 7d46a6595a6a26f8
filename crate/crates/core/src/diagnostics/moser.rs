use crate::error::{param, Result};
use crate::evolution::Trajectory;
use crate::fractional_time::ln_bound_moser_recursion;
use crate::spatial::Field;

/// Constants a_bar > 1 and r > 0 of the recursion bound. The embedding constants
/// behind them are not available, so the default takes the smallest admissible
/// values, which gives the tightest bound the recursion allows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoserConstants {
    pub a_bar: f64,
    pub r: f64,
}

impl Default for MoserConstants {
    fn default() -> Self {
        MoserConstants { a_bar: 1.0 + 1e-9, r: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoserTable {
    /// q_k = 2^k + 2
    pub q: Vec<f64>,
    pub times: Vec<f64>,
    /// ln of int |u|^{q_k} dx, indexed [snapshot][k]; -inf for a zero field.
    pub ln_norms: Vec<Vec<f64>>,
    pub ln_bounds: Vec<f64>,
    /// max over snapshots of observed / bound, per k.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// K0 and sup_t int u^{q_0}, the inputs to the bound.
    pub k0: f64,
    pub y0_sup: f64,
}

pub fn q_k(k: usize) -> f64 {
    (1u64 << k) as f64 + 2.0
}

/// ln sum |u|^q h^N, scaled by the max to stay finite.
pub fn ln_power_integral(u: &Field, q: f64) -> f64 {
    let m = u.sup_norm();
    if m == 0.0 {
        return f64::NEG_INFINITY;
    }
    let s: f64 = u.values.iter().map(|v| (v.abs() / m).powf(q)).sum();
    q * m.ln() + s.ln() + u.grid.cell_volume().ln()
}

/// |grad w|_2^2 by central differences with zero extension.
fn grad_sq(w: &Field) -> f64 {
    let g = w.grid;
    let n = g.n();
    let h = g.h();
    let at = |ix: isize, iy: isize| -> f64 {
        if ix < 0 || iy < 0 || ix >= n as isize || iy >= n as isize {
            0.0
        } else {
            w.values[g.flat(ix as usize, iy as usize)]
        }
    };
    let mut acc = 0.0;
    for i in 0..g.len() {
        let (ix, iy) = g.split(i);
        let (ix, iy) = (ix as isize, iy as isize);
        let dx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2.0 * h);
        acc += dx * dx;
        if g.dim() == 2 {
            let dy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2.0 * h);
            acc += dy * dy;
        }
    }
    acc * g.cell_volume()
}

/// int |u|^{q_k} over the stored snapshots for k = 0..=k_max against the
/// recursion bound with K = K0 = max{1, |u0|_1, |u0|_inf, max_k |grad u0^{(m+q_k-1)/2}|^2},
/// y0 = sup_t int u^{q_0} and horizon T = final time of the run.
pub fn moser_tracker(traj: &Trajectory, k_max: usize, consts: MoserConstants) -> Result<MoserTable> {
    if k_max > 6 {
        return Err(param(format!("k_max = {k_max} above 6")));
    }
    let horizon = traj.final_time();
    if !(horizon > 0.0) {
        return Err(param("trajectory has no time span"));
    }
    let alpha = traj.params.alpha;
    let m = traj.params.m;
    let q: Vec<f64> = (0..=k_max).map(q_k).collect();
    let u0 = &traj.snapshots[0].field;
    let mut k0 = 1.0f64.max(u0.lp_norm(1.0)).max(u0.sup_norm());
    for &qk in &q {
        let e = (m + qk - 1.0) / 2.0;
        k0 = k0.max(grad_sq(&u0.map(|v| v.max(0.0).powf(e))));
    }
    let times: Vec<f64> = traj.snapshots.iter().map(|s| s.t).collect();
    let ln_norms: Vec<Vec<f64>> = traj.snapshots.iter().map(|s| q.iter().map(|&qk| ln_power_integral(&s.field, qk)).collect()).collect();
    let y0_sup = ln_norms.iter().map(|r| r[0].exp()).fold(0.0, f64::max);
    let ln_bounds = (0..=k_max)
        .map(|k| ln_bound_moser_recursion(alpha, consts.a_bar, consts.r, k0, y0_sup, horizon, k as u32))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = (0..=k_max)
        .map(|k| ln_norms.iter().map(|r| (r[k] - ln_bounds[k]).exp()).fold(0.0, f64::max))
        .collect();
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(MoserTable { q, times, ln_norms, ln_bounds, ratios, max_ratio, k0, y0_sup })
}
