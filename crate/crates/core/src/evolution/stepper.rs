use super::history::FieldHistory;
use super::params::SimParams;
use super::trajectory::{Status, Trajectory};
use crate::error::{Error, Result};
use crate::spatial::{FracPLaplacian, Field, Grid, Kernel, LinearFastPath, ToeplitzConv};

/// Non-local factor in the reaction term.
enum Nonlocal {
    /// mu u^2 (1 - k J*u) - gamma u
    Competition(ToeplitzConv),
    /// u^2 (1 - int u) - u
    Mass,
}

/// Explicit L1 stepper: diffusion and reaction are evaluated at the previous state.
pub struct Stepper {
    params: SimParams,
    grid: Grid,
    op: FracPLaplacian,
    fast: Option<LinearFastPath>,
    nonlocal: Nonlocal,
    c: f64,
}

impl Stepper {
    pub fn competition(grid: Grid, params: &SimParams, kernel: &Kernel) -> Result<Self> {
        grid.same_as(&kernel.grid)?;
        Self::build(grid, params, Nonlocal::Competition(kernel.convolver()))
    }

    pub fn porous(grid: Grid, params: &SimParams) -> Result<Self> {
        Self::build(grid, params, Nonlocal::Mass)
    }

    fn build(grid: Grid, params: &SimParams, nonlocal: Nonlocal) -> Result<Self> {
        params.validate(grid.dim())?;
        let op = FracPLaplacian::new(grid, params.op)?;
        let fast = if params.op.p == 2.0 { Some(op.fast_linear()?) } else { None };
        Ok(Stepper { params: *params, grid, op, fast, nonlocal, c: params.update_factor() })
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    /// diffusion_scale * L(|u|^{m-1} u).
    pub fn diffusion(&self, u: &[f64]) -> Vec<f64> {
        if self.params.diffusion_scale == 0.0 {
            return vec![0.0; u.len()];
        }
        let m = self.params.m;
        let w: Vec<f64> = if m == 1.0 { u.to_vec() } else { u.iter().map(|&v| v.abs().powf(m) * v.signum()).collect() };
        let mut out = match &self.fast {
            Some(path) => {
                let f = Field { grid: self.grid, values: w };
                self.op.apply_fast(path, &f).map(|f| f.values).unwrap_or_else(|_| self.op.apply_values(&f.values))
            }
            None => self.op.apply_values(&w),
        };
        if self.params.diffusion_scale != 1.0 {
            out.iter_mut().for_each(|v| *v *= self.params.diffusion_scale);
        }
        out
    }

    pub fn reaction(&self, u: &[f64]) -> Vec<f64> {
        match &self.nonlocal {
            Nonlocal::Competition(conv) => {
                let (mu, k, g) = (self.params.mu, self.params.k, self.params.gamma);
                let ju = conv.apply(u);
                u.iter().zip(&ju).map(|(&v, &j)| mu * v * v * (1.0 - k * j) - g * v).collect()
            }
            Nonlocal::Mass => {
                let mass = u.iter().sum::<f64>() * self.grid.cell_volume();
                u.iter().map(|&v| v * v * (1.0 - mass) - v).collect()
            }
        }
    }

    /// Next state from the history; `t` is the time of the last state. Returns the
    /// raw values (possibly non-finite) and the stability ratio
    /// Gamma(2 - alpha) dt^alpha |L u^m|_inf / |u|_inf.
    pub fn advance(&self, hist: &mut FieldHistory, t: f64) -> Result<(Vec<f64>, f64)> {
        let u = &hist.last().values;
        let unorm = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = self.diffusion(u);
        let mut ratio = 0.0;
        if unorm > 0.0 {
            let dnorm = diff.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            ratio = self.c * dnorm / unorm;
            if ratio > self.params.stability_factor {
                let advisory_dt = self.params.dt * (self.params.stability_factor / ratio).powf(1.0 / self.params.alpha) * 0.9;
                return Err(Error::Stability { t, ratio, advisory_dt });
            }
        }
        let f = self.reaction(u);
        let u = hist.last().values.clone();
        let mem = hist.memory();
        let next = u
            .iter()
            .zip(&mem)
            .zip(diff.iter().zip(&f))
            .map(|((&v, &m), (&d, &r))| v - m + self.c * (r - d))
            .collect();
        Ok((next, ratio))
    }

    /// Integrates from u0 to t_end or a terminal state.
    pub fn run(&self, u0: &Field, scheme: &str, kernel_info: String) -> Result<Trajectory> {
        self.grid.same_as(&u0.grid)?;
        u0.check_finite()?;
        if u0.min() < 0.0 {
            return Err(Error::Domain(format!("initial data must be nonnegative, min {:e}", u0.min())));
        }
        let p = &self.params;
        let mut traj = Trajectory::start(*p, scheme, kernel_info, u0);
        let mut hist = FieldHistory::new(p.alpha, u0.clone(), p.history_window);
        for n in 0..p.steps() {
            let t = n as f64 * p.dt;
            let (values, ratio) = self.advance(&mut hist, t)?;
            if values.iter().any(|v| !v.is_finite()) {
                traj.finish(Status::SolverDiverged { t_star: t });
                return Ok(traj);
            }
            let next = Field { grid: self.grid, values };
            let t_next = (n + 1) as f64 * p.dt;
            traj.record(n + 1, t_next, &next, ratio);
            if next.sup_norm() > p.blowup_threshold {
                traj.finish(Status::Blowup { t_star: t_next });
                return Ok(traj);
            }
            hist.push(next)?;
        }
        traj.finish(Status::Completed);
        Ok(traj)
    }
}

/// One explicit step from the states u_0..u_n of the competition model.
pub fn step(history: &[Field], params: &SimParams, kernel: &Kernel) -> Result<Field> {
    let first = history.first().ok_or_else(|| Error::State("empty history".into()))?;
    let stepper = Stepper::competition(first.grid, params, kernel)?;
    let mut hist = FieldHistory::from_states(params.alpha, history, params.history_window)?;
    let t = (history.len() - 1) as f64 * params.dt;
    let (values, _) = stepper.advance(&mut hist, t)?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!("solver diverged after t = {t}")));
    }
    Field::new(first.grid, values)
}

pub(crate) fn kernel_info(kernel: &Kernel) -> String {
    format!("sampled delta0={:?} eta={:?} mass={:?}", kernel.delta0, kernel.eta, kernel.mass())
}

/// Competition model with the L1 explicit scheme.
pub fn run(u0: &Field, params: &SimParams, kernel: &Kernel) -> Result<Trajectory> {
    Stepper::competition(u0.grid, params, kernel)?.run(u0, "l1-explicit", kernel_info(kernel))
}

/// Porous-medium variant: diffusion of u^m, reaction u^2 (1 - int u) - u.
/// The mu, k and gamma fields are ignored.
pub fn run_porous(u0: &Field, params: &SimParams) -> Result<Trajectory> {
    params.validate_porous(u0.grid.dim())?;
    Stepper::porous(u0.grid, params)?.run(u0, "l1-explicit-porous", "global mass".into())
}
