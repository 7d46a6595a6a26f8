use crate::error::{param, Error, Result};
use crate::spatial::OperatorParams;

/// Model and discretization parameters of one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    pub alpha: f64,
    pub op: OperatorParams,
    pub mu: f64,
    pub k: f64,
    pub gamma: f64,
    /// Diffusion acts on u^m; 1 for the competition model.
    pub m: f64,
    pub dt: f64,
    pub t_end: f64,
    pub blowup_threshold: f64,
    pub stability_factor: f64,
    /// Multiplies the diffusion term; 0 switches diffusion off.
    pub diffusion_scale: f64,
    /// Store every `store_stride`-th field (the first and last are always kept).
    pub store_stride: usize,
    /// Keep only the newest `n` increments in the L1 memory sum.
    pub history_window: Option<usize>,
}

impl SimParams {
    pub fn new(alpha: f64, s: f64, p: f64, dim: usize) -> Self {
        SimParams {
            alpha,
            op: OperatorParams::new(s, p, dim),
            mu: 1.0,
            k: 1.0,
            gamma: 1.0,
            m: 1.0,
            dt: 1e-3,
            t_end: 1.0,
            blowup_threshold: 1e8,
            stability_factor: 0.5,
            diffusion_scale: 1.0,
            store_stride: 1,
            history_window: None,
        }
    }

    pub fn steps(&self) -> usize {
        ((self.t_end / self.dt) - 1e-9).ceil().max(0.0) as usize
    }

    /// Numerical sanity only; see [`SimParams::validate_model`] for the model regime.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(param(format!("alpha = {} outside (0, 1)", self.alpha)));
        }
        self.op.validate(dim)?;
        for (name, v) in [("mu", self.mu), ("k", self.k), ("gamma", self.gamma), ("diffusion_scale", self.diffusion_scale)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(param(format!("{name} = {v} must be finite and nonnegative")));
            }
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(param("m must be positive"));
        }
        if !(self.dt > 0.0 && self.t_end > 0.0 && self.dt <= self.t_end) {
            return Err(param("need 0 < dt <= t_end"));
        }
        if !(self.blowup_threshold > 0.0) || !(self.stability_factor > 0.0) {
            return Err(param("blowup_threshold and stability_factor must be positive"));
        }
        if self.store_stride == 0 {
            return Err(param("store_stride must be at least 1"));
        }
        if self.history_window == Some(0) {
            return Err(param("history_window must be at least 1"));
        }
        Ok(())
    }

    /// mu > 0, k > 0, gamma >= 1.
    pub fn validate_model(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::Regime(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.k > 0.0) {
            return Err(Error::Regime(format!("k must be positive, got {}", self.k)));
        }
        if !(self.gamma >= 1.0) {
            return Err(Error::Regime(format!(
                "gamma must be >= 1 for the competition model, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// 1 < p < 4/3, s p < 1 and 2 - 2/N < m <= 3.
    pub fn validate_porous(&self, dim: usize) -> Result<()> {
        self.op.validate_porous()?;
        let lo = 2.0 - 2.0 / dim as f64;
        if !(self.m > lo && self.m <= 3.0) {
            return Err(Error::Regime(format!(
                "porous regime requires {lo} < m <= 3, got m = {}",
                self.m
            )));
        }
        Ok(())
    }

    /// Gamma(2 - alpha) dt^alpha, the explicit update factor.
    pub fn update_factor(&self) -> f64 {
        crate::special::gamma(2.0 - self.alpha) * self.dt.powf(self.alpha)
    }
}
