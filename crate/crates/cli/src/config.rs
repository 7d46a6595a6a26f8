//! Line-based `key = value` run configuration.

use fracrd_core::evolution::SimParams;
use fracrd_core::spatial::{Grid, Kernel, KernelShape};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, msg: impl Into<String>) -> ConfigError {
    ConfigError::Line { line, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Competition,
    Porous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    L1Explicit,
    SpectralDuhamel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub shape: KernelShape,
    pub delta0: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    GaussianBump { amplitude: f64, width: f64, center: [f64; 2] },
    /// c e1 with int u0 e1 = factor (1 + lambda1).
    ScaledEigen { factor: f64 },
    Constant { value: f64 },
    /// Field CSV as written by the field writer (`x,value` or `x,y,value`).
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Model,
    pub method: Method,
    pub params: SimParams,
    pub dim: usize,
    pub half_width: f64,
    pub nodes: usize,
    pub kernel: KernelSpec,
    pub initial: InitialSpec,
    pub seed: u64,
    /// Cube half width for local diagnostics.
    pub delta: f64,
    pub sweep_axis: Option<String>,
    pub sweep_values: Vec<f64>,
}

pub const REQUIRED: [&str; 3] = ["alpha", "s", "p"];

/// Every key in echo order.
pub const KEYS: &[&str] = &[
    "model",
    "method",
    "alpha",
    "s",
    "p",
    "m",
    "mu",
    "k",
    "gamma",
    "dt",
    "t_end",
    "blowup_threshold",
    "stability_factor",
    "diffusion_scale",
    "store_stride",
    "history_window",
    "dim",
    "half_width",
    "nodes",
    "kernel_shape",
    "kernel_size",
    "kernel_delta0",
    "kernel_eta",
    "initial",
    "amplitude",
    "bump_width",
    "center_x",
    "center_y",
    "eigen_factor",
    "initial_file",
    "seed",
    "delta",
    "sweep_axis",
    "sweep_values",
];

/// Numeric keys a sweep may vary.
pub const SWEEPABLE: &[&str] = &[
    "alpha", "s", "p", "m", "mu", "k", "gamma", "dt", "t_end", "amplitude", "bump_width", "eigen_factor", "kernel_eta",
];

fn num(v: &str) -> Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("expected a number, got '{v}'"))
}

fn uint(v: &str) -> Result<usize, String> {
    v.parse::<usize>().map_err(|_| format!("expected a nonnegative integer, got '{v}'"))
}

/// Raw values before validation; initial-data and kernel keys are kept flat so
/// that the echo does not depend on which preset is active.
#[derive(Debug, Clone, PartialEq)]
struct Raw {
    model: Model,
    method: Method,
    params: SimParams,
    dim: usize,
    half_width: f64,
    nodes: usize,
    kernel_shape: String,
    kernel_size: f64,
    kernel_delta0: f64,
    kernel_eta: f64,
    initial: String,
    amplitude: f64,
    bump_width: f64,
    center: [f64; 2],
    eigen_factor: f64,
    initial_file: Option<PathBuf>,
    seed: u64,
    delta: f64,
    sweep_axis: Option<String>,
    sweep_values: Vec<f64>,
}

impl Default for Raw {
    fn default() -> Self {
        Raw {
            model: Model::Competition,
            method: Method::L1Explicit,
            params: SimParams::new(0.5, 0.5, 2.0, 1),
            dim: 1,
            half_width: 8.0,
            nodes: 65,
            kernel_shape: "gaussian".into(),
            kernel_size: 1.0,
            kernel_delta0: 1.0,
            kernel_eta: 1e-3,
            initial: "gaussian_bump".into(),
            amplitude: 0.1,
            bump_width: 1.0,
            center: [0.0; 2],
            eigen_factor: 2.0,
            initial_file: None,
            seed: 0,
            delta: 0.5,
            sweep_axis: None,
            sweep_values: Vec::new(),
        }
    }
}

impl Raw {
    fn set(&mut self, key: &str, v: &str) -> Result<(), String> {
        let p = &mut self.params;
        match key {
            "model" => {
                self.model = match v {
                    "competition" => Model::Competition,
                    "porous" => Model::Porous,
                    _ => return Err(format!("model must be competition or porous, got '{v}'")),
                }
            }
            "method" => {
                self.method = match v {
                    "l1-explicit" => Method::L1Explicit,
                    "spectral-duhamel" => Method::SpectralDuhamel,
                    _ => return Err(format!("method must be l1-explicit or spectral-duhamel, got '{v}'")),
                }
            }
            "alpha" => p.alpha = num(v)?,
            "s" => p.op.s = num(v)?,
            "p" => p.op.p = num(v)?,
            "m" => p.m = num(v)?,
            "mu" => p.mu = num(v)?,
            "k" => p.k = num(v)?,
            "gamma" => p.gamma = num(v)?,
            "dt" => p.dt = num(v)?,
            "t_end" => p.t_end = num(v)?,
            "blowup_threshold" => p.blowup_threshold = num(v)?,
            "stability_factor" => p.stability_factor = num(v)?,
            "diffusion_scale" => p.diffusion_scale = num(v)?,
            "store_stride" => p.store_stride = uint(v)?,
            "history_window" => p.history_window = if v == "none" { None } else { Some(uint(v)?) },
            "dim" => self.dim = uint(v)?,
            "half_width" => self.half_width = num(v)?,
            "nodes" => self.nodes = uint(v)?,
            "kernel_shape" => self.kernel_shape = v.to_string(),
            "kernel_size" => self.kernel_size = num(v)?,
            "kernel_delta0" => self.kernel_delta0 = num(v)?,
            "kernel_eta" => self.kernel_eta = num(v)?,
            "initial" => self.initial = v.to_string(),
            "amplitude" => self.amplitude = num(v)?,
            "bump_width" => self.bump_width = num(v)?,
            "center_x" => self.center[0] = num(v)?,
            "center_y" => self.center[1] = num(v)?,
            "eigen_factor" => self.eigen_factor = num(v)?,
            "initial_file" => self.initial_file = if v == "none" { None } else { Some(PathBuf::from(v)) },
            "seed" => self.seed = v.parse().map_err(|_| format!("expected an unsigned integer, got '{v}'"))?,
            "delta" => self.delta = num(v)?,
            "sweep_axis" => self.sweep_axis = if v == "none" { None } else { Some(v.to_string()) },
            "sweep_values" => {
                self.sweep_values = if v.is_empty() || v == "none" {
                    Vec::new()
                } else {
                    v.split(',').map(|x| num(x.trim())).collect::<Result<_, _>>()?
                }
            }
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> String {
        let p = &self.params;
        let f = |x: f64| format!("{x:?}");
        match key {
            "model" => match self.model {
                Model::Competition => "competition".into(),
                Model::Porous => "porous".into(),
            },
            "method" => match self.method {
                Method::L1Explicit => "l1-explicit".into(),
                Method::SpectralDuhamel => "spectral-duhamel".into(),
            },
            "alpha" => f(p.alpha),
            "s" => f(p.op.s),
            "p" => f(p.op.p),
            "m" => f(p.m),
            "mu" => f(p.mu),
            "k" => f(p.k),
            "gamma" => f(p.gamma),
            "dt" => f(p.dt),
            "t_end" => f(p.t_end),
            "blowup_threshold" => f(p.blowup_threshold),
            "stability_factor" => f(p.stability_factor),
            "diffusion_scale" => f(p.diffusion_scale),
            "store_stride" => p.store_stride.to_string(),
            "history_window" => p.history_window.map_or("none".into(), |w| w.to_string()),
            "dim" => self.dim.to_string(),
            "half_width" => f(self.half_width),
            "nodes" => self.nodes.to_string(),
            "kernel_shape" => self.kernel_shape.clone(),
            "kernel_size" => f(self.kernel_size),
            "kernel_delta0" => f(self.kernel_delta0),
            "kernel_eta" => f(self.kernel_eta),
            "initial" => self.initial.clone(),
            "amplitude" => f(self.amplitude),
            "bump_width" => f(self.bump_width),
            "center_x" => f(self.center[0]),
            "center_y" => f(self.center[1]),
            "eigen_factor" => f(self.eigen_factor),
            "initial_file" => self.initial_file.as_ref().map_or("none".into(), |p| p.display().to_string()),
            "seed" => self.seed.to_string(),
            "delta" => f(self.delta),
            "sweep_axis" => self.sweep_axis.clone().unwrap_or_else(|| "none".into()),
            "sweep_values" => {
                if self.sweep_values.is_empty() {
                    "none".into()
                } else {
                    self.sweep_values.iter().map(|&v| f(v)).collect::<Vec<_>>().join(",")
                }
            }
            _ => unreachable!("unknown key {key}"),
        }
    }
}

/// Parses and validates a configuration. `alpha`, `s` and `p` are required;
/// everything else has a default (see [`echo`] of a minimal config).
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut raw = Raw::default();
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| at(ln, format!("expected 'key = value', got '{body}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(at(ln, format!("duplicate key '{key}' (first set on line {first})")));
        }
        raw.set(key, value).map_err(|m| at(ln, m))?;
        let key = KEYS.iter().find(|k| **k == key).expect("set accepted the key");
        seen.push((key, ln));
    }
    for req in REQUIRED {
        if !seen.iter().any(|(k, _)| *k == req) {
            return Err(ConfigError::Invalid(format!("missing required key '{req}'")));
        }
    }
    let line_of = |key: &str| seen.iter().find(|(k, _)| *k == key).map(|(_, l)| *l);
    build(raw).map_err(|(key, msg)| match key.and_then(line_of) {
        Some(line) => ConfigError::Line { line, msg },
        None => ConfigError::Invalid(msg),
    })
}

/// Best guess at the key behind a failed numeric check, for the line number.
fn offending_key(p: &SimParams) -> Option<&'static str> {
    let nonneg = |v: f64| v >= 0.0 && v.is_finite();
    [
        ("alpha", p.alpha > 0.0 && p.alpha < 1.0),
        ("s", p.op.s > 0.0 && p.op.s < 1.0),
        ("p", p.op.p > 1.0),
        ("mu", nonneg(p.mu)),
        ("k", nonneg(p.k)),
        ("gamma", nonneg(p.gamma)),
        ("diffusion_scale", nonneg(p.diffusion_scale)),
        ("m", p.m > 0.0 && p.m.is_finite()),
        ("dt", p.dt > 0.0 && p.dt <= p.t_end),
        ("t_end", p.t_end > 0.0),
        ("blowup_threshold", p.blowup_threshold > 0.0),
        ("stability_factor", p.stability_factor > 0.0),
        ("store_stride", p.store_stride > 0),
        ("history_window", p.history_window != Some(0)),
    ]
    .into_iter()
    .find(|(_, ok)| !ok)
    .map(|(k, _)| k)
}

fn build(raw: Raw) -> Result<RunConfig, (Option<&'static str>, String)> {
    let e = |k: &'static str, m: String| (Some(k), m);
    if !(raw.dim == 1 || raw.dim == 2) {
        return Err(e("dim", format!("dim must be 1 or 2, got {}", raw.dim)));
    }
    let mut params = raw.params;
    let (s, p) = (params.op.s, params.op.p);
    params.op = fracrd_core::spatial::OperatorParams::new(s, p, raw.dim);
    params.validate(raw.dim).map_err(|err| (offending_key(&params), err.to_string()))?;
    match raw.model {
        Model::Competition => {
            if params.m != 1.0 {
                return Err(e("m", "the competition model uses m = 1".into()));
            }
            // k = 0 drops the competition term: the blow-up configuration.
            let mut checked = params;
            if checked.k == 0.0 {
                checked.k = 1.0;
            }
            checked.validate_model().map_err(|err| {
                let key = if params.gamma < 1.0 { "gamma" } else if params.mu <= 0.0 { "mu" } else { "k" };
                (Some(key), err.to_string())
            })?;
        }
        Model::Porous => {
            params.validate_porous(raw.dim).map_err(|err| {
                let key = if !(p > 1.0 && p < 4.0 / 3.0) { "p" } else if s * p >= 1.0 { "s" } else { "m" };
                (Some(key), err.to_string())
            })?;
            if raw.method == Method::SpectralDuhamel {
                return Err(e("method", "the spectral path covers the competition model only".into()));
            }
        }
    }
    if raw.method == Method::SpectralDuhamel && p != 2.0 {
        return Err(e("method", format!("the spectral path needs p = 2, got p = {p}")));
    }
    Grid::new(raw.dim, raw.half_width, raw.nodes).map_err(|err| (Some("nodes"), err.to_string()))?;
    let shape = match raw.kernel_shape.as_str() {
        "box" => KernelShape::Box { radius: raw.kernel_size },
        "gaussian" => KernelShape::Gaussian { width: raw.kernel_size },
        other => return Err(e("kernel_shape", format!("kernel_shape must be box or gaussian, got '{other}'"))),
    };
    let initial = match raw.initial.as_str() {
        "gaussian_bump" => {
            if !(raw.bump_width > 0.0) {
                return Err(e("bump_width", "bump_width must be positive".into()));
            }
            InitialSpec::GaussianBump { amplitude: raw.amplitude, width: raw.bump_width, center: raw.center }
        }
        "scaled_eigen" => {
            if !(raw.eigen_factor > 0.0) {
                return Err(e("eigen_factor", "eigen_factor must be positive".into()));
            }
            InitialSpec::ScaledEigen { factor: raw.eigen_factor }
        }
        "constant" => InitialSpec::Constant { value: raw.amplitude },
        "file" => {
            let path = raw.initial_file.clone().ok_or_else(|| e("initial", "initial = file needs initial_file".into()))?;
            if !path.is_file() {
                return Err(e("initial_file", format!("initial_file '{}' does not exist", path.display())));
            }
            InitialSpec::File { path }
        }
        other => {
            return Err(e(
                "initial",
                format!("initial must be gaussian_bump, scaled_eigen, constant or file, got '{other}'"),
            ))
        }
    };
    if let Some(axis) = &raw.sweep_axis {
        if !SWEEPABLE.contains(&axis.as_str()) {
            return Err(e("sweep_axis", format!("cannot sweep over '{axis}'; sweepable keys: {}", SWEEPABLE.join(", "))));
        }
    }
    if !(raw.delta > 0.0) {
        return Err(e("delta", "delta must be positive".into()));
    }
    Ok(RunConfig {
        model: raw.model,
        method: raw.method,
        params,
        dim: raw.dim,
        half_width: raw.half_width,
        nodes: raw.nodes,
        kernel: KernelSpec { shape, delta0: raw.kernel_delta0, eta: raw.kernel_eta },
        initial,
        seed: raw.seed,
        delta: raw.delta,
        sweep_axis: raw.sweep_axis,
        sweep_values: raw.sweep_values,
    })
}

impl RunConfig {
    fn to_raw(&self) -> Raw {
        let mut raw = Raw {
            model: self.model,
            method: self.method,
            params: self.params,
            dim: self.dim,
            half_width: self.half_width,
            nodes: self.nodes,
            kernel_delta0: self.kernel.delta0,
            kernel_eta: self.kernel.eta,
            seed: self.seed,
            delta: self.delta,
            sweep_axis: self.sweep_axis.clone(),
            sweep_values: self.sweep_values.clone(),
            ..Raw::default()
        };
        match self.kernel.shape {
            KernelShape::Box { radius } => {
                raw.kernel_shape = "box".into();
                raw.kernel_size = radius;
            }
            KernelShape::Gaussian { width } => {
                raw.kernel_shape = "gaussian".into();
                raw.kernel_size = width;
            }
        }
        match &self.initial {
            InitialSpec::GaussianBump { amplitude, width, center } => {
                raw.initial = "gaussian_bump".into();
                raw.amplitude = *amplitude;
                raw.bump_width = *width;
                raw.center = *center;
            }
            InitialSpec::ScaledEigen { factor } => {
                raw.initial = "scaled_eigen".into();
                raw.eigen_factor = *factor;
            }
            InitialSpec::Constant { value } => {
                raw.initial = "constant".into();
                raw.amplitude = *value;
            }
            InitialSpec::File { path } => {
                raw.initial = "file".into();
                raw.initial_file = Some(path.clone());
            }
        }
        raw
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.dim, self.half_width, self.nodes).expect("validated at parse time")
    }

    pub fn kernel(&self) -> fracrd_core::Result<Kernel> {
        Kernel::new(self.grid(), self.kernel.shape, self.kernel.delta0, self.kernel.eta)
    }

    /// Copy with one sweepable key replaced, validated like a parsed config.
    pub fn with_value(&self, key: &str, value: f64) -> Result<RunConfig, ConfigError> {
        if !SWEEPABLE.contains(&key) {
            return Err(ConfigError::Invalid(format!("cannot sweep over '{key}'")));
        }
        let mut raw = self.to_raw();
        raw.set(key, &format!("{value:?}")).map_err(ConfigError::Invalid)?;
        raw.sweep_axis = None;
        raw.sweep_values.clear();
        build(raw).map_err(|(_, m)| ConfigError::Invalid(m))
    }
}

/// Canonical text form with every key; `parse_config(&echo(c)) == c`.
pub fn echo(cfg: &RunConfig) -> String {
    let raw = cfg.to_raw();
    let mut s = String::new();
    for key in KEYS {
        let _ = writeln!(s, "{key} = {}", raw.get(key));
    }
    s
}
