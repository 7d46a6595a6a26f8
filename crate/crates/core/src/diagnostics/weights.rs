use crate::error::{param, Error, Result};
use crate::evolution::{Trajectory, COMPARISON_TOL};
use crate::spatial::{Field, FracPLaplacian, Grid, OperatorParams};
use crate::special::gamma;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    /// (1 + |x|^2)^{-(N + gamma_w)/2}
    PowerLaw { gamma_w: f64 },
    Constant,
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    pub field: Field,
    pub kind: WeightKind,
}

impl WeightFunction {
    pub fn power_law(grid: Grid, gamma_w: f64) -> Result<Self> {
        if !(gamma_w > 0.0) {
            return Err(param("decay exponent must be positive"));
        }
        let e = -(grid.dim() as f64 + gamma_w) / 2.0;
        let field = Field::from_fn(grid, |x| (1.0 + x[0] * x[0] + x[1] * x[1]).powf(e));
        Ok(WeightFunction { field, kind: WeightKind::PowerLaw { gamma_w } })
    }

    pub fn constant(grid: Grid) -> Self {
        WeightFunction { field: Field::constant(grid, 1.0), kind: WeightKind::Constant }
    }

    pub fn sampled(field: Field) -> Result<Self> {
        if field.values.iter().any(|&v| !(v > 0.0)) {
            return Err(param("weight must be positive everywhere"));
        }
        Ok(WeightFunction { field, kind: WeightKind::Sampled })
    }

    /// The same weight on another grid; None for sampled weights.
    pub fn on_grid(&self, grid: Grid) -> Option<Result<Self>> {
        match self.kind {
            WeightKind::PowerLaw { gamma_w } => Some(Self::power_law(grid, gamma_w)),
            WeightKind::Constant => Some(Ok(Self::constant(grid))),
            WeightKind::Sampled => None,
        }
    }

    /// -d ln phi / d ln |x| between x = L/2 and x = L along the first axis; tends
    /// to N + gamma_w for a power law on a large box.
    pub fn edge_decay_exponent(&self) -> f64 {
        let g = self.field.grid;
        let n = g.n();
        let row = if g.dim() == 2 { (n - 1) / 2 } else { 0 };
        let i_edge = g.flat(n - 1, row);
        let i_mid = g.flat((3 * n - 3) / 4, row);
        let (x1, x2) = (g.point(i_mid)[0], g.point(i_edge)[0]);
        -(self.field.values[i_edge] / self.field.values[i_mid]).ln() / (x2 / x1).ln()
    }
}

/// 2s' < gamma_w < 2s' / (m (p - 1)) with s' = sp/2.
pub fn in_admissible_band(gamma_w: f64, s: f64, p: f64, m: f64) -> bool {
    let s2 = s * p;
    gamma_w > s2 && gamma_w < s2 / (m * (p - 1.0))
}

/// int u phi dx
pub fn weighted_mass(u: &Field, phi: &WeightFunction) -> Result<f64> {
    u.dot(&phi.field)
}

/// M_{s'} phi(x) = sum_{y != x} |phi(x) - phi(y)| |x - y|^{-(N + 2s')} h^N + phi(x) T(x),
/// with phi taken as zero outside the box.
pub fn m_operator(phi: &Field, s_prime: f64) -> Result<Vec<f64>> {
    let g = phi.grid;
    let op = FracPLaplacian::new(g, OperatorParams::new(s_prime, 2.0, g.dim()))?;
    let v = &phi.values;
    Ok((0..g.len())
        .into_par_iter()
        .map(|i| {
            let (ix, iy) = g.split(i);
            let mut acc = 0.0;
            for j in 0..g.len() {
                if j != i {
                    let (jx, jy) = g.split(j);
                    acc += (v[i] - v[j]).abs() * op.weight(ix.abs_diff(jx), iy.abs_diff(jy));
                }
            }
            acc + v[i].abs() * op.tail()[i]
        })
        .collect())
}

fn check_class_regime(s: f64, p: f64, m: f64) -> Result<()> {
    if !(s * p < 1.0) {
        return Err(Error::Regime(format!("weight class needs s p < 1, got {}", s * p)));
    }
    if !(m > 0.0 && m * (p - 1.0) < 1.0) {
        return Err(Error::Regime(format!("weight class needs 0 < m (p - 1) < 1, got {}", m * (p - 1.0))));
    }
    Ok(())
}

fn class_integral(phi: &Field, s: f64, p: f64, m: f64) -> Result<f64> {
    let mq = m * (p - 1.0);
    let mphi = m_operator(phi, 0.5 * s * p)?;
    let (e1, e2) = (1.0 / (1.0 - mq), mq / (1.0 - mq));
    let sum: f64 = mphi.iter().zip(&phi.values).map(|(mv, f)| mv.abs().powf(e1) / f.powf(e2)).sum();
    Ok(sum * phi.grid.cell_volume())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightClassReport {
    pub value: f64,
    /// Value on the box of twice the half width at the same spacing.
    pub doubled: Option<f64>,
    /// (doubled - value) / value.
    pub growth: Option<f64>,
    /// Finite and, when the doubled box is available, growth at most 10%.
    pub member: bool,
}

/// C(phi) = int |M_{sp/2} phi|^{1/(1 - m(p-1))} / phi^{m(p-1)/(1 - m(p-1))} dx. The
/// outer integral can only diverge at infinity, so divergence shows up as growth
/// under box doubling.
pub fn weight_class_constant(phi: &WeightFunction, s: f64, p: f64, m: f64) -> Result<WeightClassReport> {
    check_class_regime(s, p, m)?;
    let value = class_integral(&phi.field, s, p, m)?;
    let g = phi.field.grid;
    let big = Grid::new(g.dim(), 2.0 * g.half_width(), 2 * g.n() - 1)?;
    let doubled = match phi.on_grid(big) {
        Some(w) => Some(class_integral(&w?.field, s, p, m)?),
        None => None,
    };
    let growth = doubled.map(|d| (d - value) / value);
    let member = value.is_finite() && growth.map_or(true, |gr| gr <= 0.1);
    Ok(WeightClassReport { value, doubled, growth, member })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    pub times: Vec<f64>,
    /// X(t) = int (u - v) phi dx
    pub x: Vec<f64>,
    /// 1 - m(p - 1)
    pub beta: f64,
    pub k_hat: f64,
    pub c_phi: f64,
    /// eps (C(phi) / (alpha Gamma(alpha)))^beta
    pub k_phi: f64,
    /// Log-log slope of |X^beta(t1) - X^beta(t2)| against |t1 - t2|.
    pub exponent_fit: f64,
    pub exponent_required: f64,
    pub pass_constant: bool,
    pub pass_exponent: bool,
    pub pass: bool,
}

/// Hoelder continuity of X^beta in time for an ordered pair u >= v on the same
/// snapshot times: fits the smallest K with |X^beta(t1) - X^beta(t2)| <= K |t1 - t2|^{alpha beta}
/// and compares with K(phi) within 10%.
pub fn holder_mass_check(
    traj_u: &Trajectory,
    traj_v: &Trajectory,
    phi: &WeightFunction,
    s: f64,
    p: f64,
    m: f64,
    eps: f64,
) -> Result<HolderReport> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::Regime(format!("weighted estimate needs 1 < p < 2, got {p}")));
    }
    check_class_regime(s, p, m)?;
    if !(eps > 0.0) {
        return Err(param("eps must be positive"));
    }
    let su = &traj_u.snapshots;
    let sv = &traj_v.snapshots;
    if su.len() != sv.len() || su.iter().zip(sv).any(|(a, b)| a.t != b.t) {
        return Err(Error::Data("trajectories have different snapshot times".into()));
    }
    let alpha = traj_u.params.alpha;
    let beta = 1.0 - m * (p - 1.0);
    let mut times = Vec::with_capacity(su.len());
    let mut x = Vec::with_capacity(su.len());
    for (a, b) in su.iter().zip(sv) {
        let viol = a.field.values.iter().zip(&b.field.values).map(|(u, v)| v - u).fold(0.0, f64::max);
        if viol > COMPARISON_TOL {
            return Err(Error::Domain(format!("ordering u >= v violated by {viol:e} at t = {}", a.t)));
        }
        let d = Field { grid: a.field.grid, values: a.field.values.iter().zip(&b.field.values).map(|(u, v)| (u - v).max(0.0)).collect() };
        times.push(a.t);
        x.push(weighted_mass(&d, phi)?);
    }
    let xb: Vec<f64> = x.iter().map(|v| v.max(0.0).powf(beta)).collect();
    let mut k_hat: f64 = 0.0;
    let (mut sx, mut sy, mut sxx, mut sxy, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..times.len() {
        for j in (i + 1)..times.len() {
            let dt = times[j] - times[i];
            let dx = (xb[j] - xb[i]).abs();
            k_hat = k_hat.max(dx / dt.powf(alpha * beta));
            if dx > 0.0 {
                let (lx, ly) = (dt.ln(), dx.ln());
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
                cnt += 1.0;
            }
        }
    }
    let exponent_fit = if cnt >= 2.0 { (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) } else { f64::INFINITY };
    let c_phi = weight_class_constant(phi, s, p, m)?.value;
    let k_phi = eps * (c_phi / (alpha * gamma(alpha))).powf(beta);
    let exponent_required = alpha * beta - 0.1;
    let pass_constant = k_hat <= 1.1 * k_phi;
    let pass_exponent = exponent_fit >= exponent_required;
    Ok(HolderReport {
        times,
        x,
        beta,
        k_hat,
        c_phi,
        k_phi,
        exponent_fit,
        exponent_required,
        pass_constant,
        pass_exponent,
        pass: pass_constant && pass_exponent,
    })
}
