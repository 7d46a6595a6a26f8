use super::params::SimParams;
use crate::error::Result;
use crate::spatial::io::{field_to_bytes, write_atomic};
use crate::spatial::{Field, Grid};
use std::fmt::Write as _;
use std::path::Path;

/// Undershoots below this are counted as positivity warnings.
pub const POSITIVITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Status {
    Completed,
    /// Sup-norm passed the threshold at t_star.
    Blowup { t_star: f64 },
    /// Non-finite values; t_star is the last time with a finite state.
    SolverDiverged { t_star: f64 },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Completed => "completed",
            Status::Blowup { .. } => "blowup",
            Status::SolverDiverged { .. } => "solver_diverged",
        }
    }

    pub fn t_star(&self) -> Option<f64> {
        match *self {
            Status::Completed => None,
            Status::Blowup { t_star } | Status::SolverDiverged { t_star } => Some(t_star),
        }
    }

    pub fn is_terminal(&self) -> bool {
        !matches!(self, Status::Completed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub field: Field,
}

/// Time series of one run. Scalars are recorded at every step (index 0 is t = 0);
/// fields every `store_stride` steps plus the final state.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: SimParams,
    pub grid: Grid,
    pub scheme: String,
    pub kernel_info: String,
    pub times: Vec<f64>,
    pub sup_norm: Vec<f64>,
    pub l1: Vec<f64>,
    pub l2: Vec<f64>,
    /// int u dx
    pub mass: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    pub status: Status,
    pub min_value: f64,
    pub positivity_warnings: usize,
    pub max_stability_ratio: f64,
    last: Snapshot,
}

impl Trajectory {
    pub(crate) fn start(params: SimParams, scheme: &str, kernel_info: String, u0: &Field) -> Self {
        let first = Snapshot { step: 0, t: 0.0, field: u0.clone() };
        let mut t = Trajectory {
            params,
            grid: u0.grid,
            scheme: scheme.to_string(),
            kernel_info,
            times: Vec::new(),
            sup_norm: Vec::new(),
            l1: Vec::new(),
            l2: Vec::new(),
            mass: Vec::new(),
            snapshots: vec![first.clone()],
            status: Status::Completed,
            min_value: f64::INFINITY,
            positivity_warnings: 0,
            max_stability_ratio: 0.0,
            last: first,
        };
        t.push_scalars(0.0, u0);
        t
    }

    fn push_scalars(&mut self, t: f64, u: &Field) {
        self.times.push(t);
        self.sup_norm.push(u.sup_norm());
        self.l1.push(u.lp_norm(1.0));
        self.l2.push(u.lp_norm(2.0));
        self.mass.push(u.integral());
        let min = u.min();
        self.min_value = self.min_value.min(min);
        if min < -POSITIVITY_TOL {
            self.positivity_warnings += 1;
        }
    }

    pub(crate) fn record(&mut self, step: usize, t: f64, u: &Field, stability_ratio: f64) {
        self.push_scalars(t, u);
        self.max_stability_ratio = self.max_stability_ratio.max(stability_ratio);
        self.last = Snapshot { step, t, field: u.clone() };
        if step % self.params.store_stride == 0 {
            self.snapshots.push(self.last.clone());
        }
    }

    pub(crate) fn finish(&mut self, status: Status) {
        self.status = status;
        if self.snapshots.last().map(|s| s.step) != Some(self.last.step) {
            self.snapshots.push(self.last.clone());
        }
    }

    pub fn final_field(&self) -> &Field {
        &self.last.field
    }

    pub fn final_time(&self) -> f64 {
        self.last.t
    }

    /// `t,sup_norm,l1,l2,mass,status`; status is "running" except on the last row.
    pub fn scalars_csv(&self) -> String {
        let mut s = String::from("t,sup_norm,l1,l2,mass,status\n");
        let last = self.times.len().saturating_sub(1);
        for i in 0..self.times.len() {
            let st = if i == last { self.status.label() } else { "running" };
            let _ = writeln!(
                s,
                "{:?},{:?},{:?},{:?},{:?},{}",
                self.times[i], self.sup_norm[i], self.l1[i], self.l2[i], self.mass[i], st
            );
        }
        s
    }

    /// `key = value` echo of parameters, scheme and outcome.
    pub fn meta(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("version", env!("CARGO_PKG_VERSION").into());
        kv("scheme", self.scheme.clone());
        kv("kernel", self.kernel_info.clone());
        kv("dim", self.grid.dim().to_string());
        kv("half_width", format!("{:?}", self.grid.half_width()));
        kv("n", self.grid.n().to_string());
        kv("alpha", format!("{:?}", p.alpha));
        kv("s", format!("{:?}", p.op.s));
        kv("p", format!("{:?}", p.op.p));
        kv("tail_mode", format!("{:?}", p.op.tail_mode));
        kv("singular_mode", format!("{:?}", p.op.singular_mode));
        kv("mu", format!("{:?}", p.mu));
        kv("k", format!("{:?}", p.k));
        kv("gamma", format!("{:?}", p.gamma));
        kv("m", format!("{:?}", p.m));
        kv("dt", format!("{:?}", p.dt));
        kv("t_end", format!("{:?}", p.t_end));
        kv("blowup_threshold", format!("{:?}", p.blowup_threshold));
        kv("stability_factor", format!("{:?}", p.stability_factor));
        kv("diffusion_scale", format!("{:?}", p.diffusion_scale));
        kv("store_stride", p.store_stride.to_string());
        kv("history_window", p.history_window.map_or("none".into(), |w| w.to_string()));
        kv("status", self.status.label().into());
        kv("t_star", self.status.t_star().map_or("none".into(), |t| format!("{t:?}")));
        kv("min_value", format!("{:?}", self.min_value));
        kv("positivity_warnings", self.positivity_warnings.to_string());
        kv("max_stability_ratio", format!("{:?}", self.max_stability_ratio));
        s
    }

    /// Writes scalars.csv, meta and field_XXXX.bin (numbered by step) into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        write_atomic(&dir.join("scalars.csv"), self.scalars_csv().as_bytes())?;
        write_atomic(&dir.join("meta"), self.meta().as_bytes())?;
        for snap in &self.snapshots {
            write_atomic(&dir.join(format!("field_{:04}.bin", snap.step)), &field_to_bytes(&snap.field))?;
        }
        Ok(())
    }
}
