//! Subcommand bodies. Each returns the process exit code on success; an `Err`
//! maps to exit 1 in `main`.

use crate::config::{echo, InitialSpec, Method, Model, RunConfig};
use crate::suites::{self, SuiteReport, SUITES};
use fracrd_core::diagnostics::{blowup_functional, blowup_window, matrix_csv, CheckRow};
use fracrd_core::eigen::{first_eigenpair_linear, first_eigenpair_plap, EigenPair};
use fracrd_core::evolution::{run, run_porous, spectral_duhamel_run, Status, Trajectory};
use fracrd_core::spatial::io::{field_from_csv, write_atomic};
use fracrd_core::spatial::Field;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// Blow-up or divergence: an expected terminal state, not a failure.
pub const EXIT_BLOWUP: i32 = 2;
/// The command ran but a check it reports on did not hold.
pub const EXIT_CHECK_FAILED: i32 = 3;

const PLAP_MAX_ITERS: usize = 100_000;
const PLAP_STEP: f64 = 0.1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error(transparent)]
    Core(#[from] fracrd_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn write(path: &Path, text: &str) -> CliResult<()> {
    write_atomic(path, text.as_bytes())?;
    Ok(())
}

/// First eigenpair at the config's (s, p): linear solver for p = 2, projected
/// gradient otherwise.
pub fn eigenpair(cfg: &RunConfig) -> CliResult<EigenPair> {
    let (s, p) = (cfg.params.op.s, cfg.params.op.p);
    Ok(if p == 2.0 {
        first_eigenpair_linear(cfg.grid(), s)?
    } else {
        first_eigenpair_plap(cfg.grid(), s, p, PLAP_MAX_ITERS, PLAP_STEP)?
    })
}

/// Builds u0 from the preset. Also returns the eigenpair when one was needed.
pub fn initial_field(cfg: &RunConfig) -> CliResult<(Field, Option<EigenPair>)> {
    let g = cfg.grid();
    Ok(match &cfg.initial {
        InitialSpec::GaussianBump { amplitude, width, center } => {
            let (a, w, c) = (*amplitude, *width, *center);
            let u = Field::from_fn(g, |x| {
                let mut r2 = (x[0] - c[0]).powi(2);
                if g.dim() == 2 {
                    r2 += (x[1] - c[1]).powi(2);
                }
                a * (-r2 / (2.0 * w * w)).exp()
            });
            (u, None)
        }
        InitialSpec::Constant { value } => (Field::constant(g, *value), None),
        InitialSpec::ScaledEigen { factor } => {
            let pair = eigenpair(cfg)?;
            let e2 = pair.e1.dot(&pair.e1)?;
            let c = factor * (1.0 + pair.lambda1) / e2;
            (pair.e1.scaled(c), Some(pair))
        }
        InitialSpec::File { path } => {
            let text = std::fs::read_to_string(path).map_err(fracrd_core::Error::from)?;
            (field_from_csv(&text, g)?, None)
        }
    })
}

pub fn simulate(cfg: &RunConfig, u0: &Field) -> CliResult<Trajectory> {
    let traj = match (cfg.model, cfg.method) {
        (Model::Porous, _) => run_porous(u0, &cfg.params)?,
        (Model::Competition, Method::L1Explicit) => run(u0, &cfg.params, &cfg.kernel()?)?,
        (Model::Competition, Method::SpectralDuhamel) => spectral_duhamel_run(u0, &cfg.params, &cfg.kernel()?)?,
    };
    Ok(traj)
}

fn status_code(status: &Status) -> i32 {
    if status.is_terminal() {
        EXIT_BLOWUP
    } else {
        EXIT_OK
    }
}

fn status_line(traj: &Trajectory) -> String {
    let t_star = traj.status.t_star().map_or("-".to_string(), |t| format!("{t:?}"));
    format!(
        "status={} t_star={} t_final={:?} sup_final={:?} min={:?} positivity_warnings={}",
        traj.status.label(),
        t_star,
        traj.final_time(),
        traj.sup_norm.last().copied().unwrap_or(f64::NAN),
        traj.min_value,
        traj.positivity_warnings
    )
}

/// Runs one simulation into `out` (trajectory files plus `config.txt`).
pub fn cmd_run(cfg: &RunConfig, out: &Path) -> CliResult<i32> {
    let (u0, _) = initial_field(cfg)?;
    let traj = simulate(cfg, &u0)?;
    traj.write_dir(out)?;
    write(&out.join("config.txt"), &echo(cfg))?;
    println!("{}", status_line(&traj));
    Ok(status_code(&traj.status))
}

/// Runs a suite by id or name, or every suite for `all`, and writes matrix.csv.
pub fn cmd_verify(suite: &str, out: &Path, seed: u64) -> CliResult<i32> {
    let selected: Vec<_> = if suite.eq_ignore_ascii_case("all") {
        SUITES.iter().collect()
    } else {
        vec![suites::find(suite).ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
            CliError::Usage(format!("unknown suite '{suite}'; known: all, {}", names.join(", ")))
        })?]
    };
    let reports: Vec<SuiteReport> = selected.iter().map(|s| s.run(seed)).collect();
    let rows: Vec<CheckRow> = reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
    std::fs::create_dir_all(out).map_err(fracrd_core::Error::from)?;
    write(&out.join("matrix.csv"), &matrix_csv(&rows))?;
    for r in &reports {
        println!(
            "{} {} {} ({:.2}s)",
            if r.pass() { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.elapsed.as_secs_f64()
        );
        for row in r.failed_rows() {
            println!("    failed: {} value={:?} bound={:?} {}", row.check, row.value, row.bound, row.regime);
        }
    }
    Ok(if reports.iter().all(|r| r.pass()) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Writes eigen.csv (lambda1 and e1) and eigen.meta.
pub fn cmd_eigen(cfg: &RunConfig, out: &Path) -> CliResult<i32> {
    let pair = eigenpair(cfg)?;
    std::fs::create_dir_all(out).map_err(fracrd_core::Error::from)?;
    write(&out.join("eigen.csv"), &pair.to_csv())?;
    let meta = format!(
        "s = {:?}\np = {:?}\nmethod = {}\nlambda1 = {:?}\niterations = {}\nresidual = {:?}\nnormalization = {:?}\n",
        cfg.params.op.s, cfg.params.op.p, pair.method, pair.lambda1, pair.iterations, pair.residual, pair.normalization
    );
    write(&out.join("eigen.meta"), &meta)?;
    println!("lambda1={:?} method={} iterations={} residual={:e}", pair.lambda1, pair.method, pair.iterations, pair.residual);
    Ok(EXIT_OK)
}

/// H0, the blow-up window and a run; exit 0 when the detected t* lies in
/// [t_lo / 2, 2 t_hi], 3 otherwise.
pub fn cmd_blowup(cfg: &RunConfig, out: &Path) -> CliResult<i32> {
    let (u0, pair) = initial_field(cfg)?;
    let pair = match pair {
        Some(p) => p,
        None => eigenpair(cfg)?,
    };
    let f = blowup_functional(&u0, &pair)?;
    let w = blowup_window(cfg.params.alpha, f.h0)?;
    let traj = simulate(cfg, &u0)?;
    traj.write_dir(out)?;
    write(&out.join("config.txt"), &echo(cfg))?;
    let (lo, hi) = (0.5 * w.t_lo, 2.0 * w.t_hi);
    let t_star = match traj.status {
        Status::Blowup { t_star } => Some(t_star),
        _ => None,
    };
    let inside = t_star.is_some_and(|t| t >= lo && t <= hi);
    let mut report = String::new();
    writeln!(report, "lambda1,{:?}", pair.lambda1).unwrap();
    writeln!(report, "h0,{:?}", f.h0).unwrap();
    writeln!(report, "threshold,{:?}", f.threshold).unwrap();
    writeln!(report, "triggers,{}", f.triggers).unwrap();
    writeln!(report, "t_lo,{:?}", w.t_lo).unwrap();
    writeln!(report, "t_hi,{:?}", w.t_hi).unwrap();
    writeln!(report, "status,{}", traj.status.label()).unwrap();
    writeln!(report, "t_star,{}", t_star.map_or("nan".to_string(), |t| format!("{t:?}"))).unwrap();
    writeln!(report, "inside,{inside}").unwrap();
    write(&out.join("blowup.csv"), &report)?;
    println!(
        "h0={:?} threshold={:?} window=[{:?}, {:?}] {} inside_relaxed_window={}",
        f.h0,
        f.threshold,
        w.t_lo,
        w.t_hi,
        status_line(&traj),
        inside
    );
    Ok(if inside { EXIT_OK } else { EXIT_CHECK_FAILED })
}

struct SweepRow {
    value: f64,
    code: i32,
    status: String,
    t_star: f64,
    t_final: f64,
    sup_final: f64,
    message: String,
}

fn sweep_one(base: &RunConfig, axis: &str, value: f64, dir: &Path) -> SweepRow {
    let attempt = || -> CliResult<Trajectory> {
        let cfg = base.with_value(axis, value)?;
        let (u0, _) = initial_field(&cfg)?;
        let traj = simulate(&cfg, &u0)?;
        traj.write_dir(dir)?;
        write(&dir.join("config.txt"), &echo(&cfg))?;
        Ok(traj)
    };
    match attempt() {
        Ok(traj) => SweepRow {
            value,
            code: status_code(&traj.status),
            status: traj.status.label().to_string(),
            t_star: traj.status.t_star().unwrap_or(f64::NAN),
            t_final: traj.final_time(),
            sup_final: traj.sup_norm.last().copied().unwrap_or(f64::NAN),
            message: String::new(),
        },
        Err(e) => SweepRow {
            value,
            code: EXIT_ERROR,
            status: "error".into(),
            t_star: f64::NAN,
            t_final: f64::NAN,
            sup_final: f64::NAN,
            message: e.to_string(),
        },
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Independent runs over `axis`, one subdirectory each (`run_000`, ...), plus
/// sweep.csv with the per-run exit code. Exit 1 if any run errored, else 0.
pub fn cmd_sweep(cfg: &RunConfig, axis: &str, values: &[f64], out: &Path) -> CliResult<i32> {
    if values.is_empty() {
        return Err(CliError::Usage("sweep needs at least one value".into()));
    }
    // Validate the axis up front so a typo fails once, not per run.
    cfg.with_value(axis, values[0])?;
    std::fs::create_dir_all(out).map_err(fracrd_core::Error::from)?;
    let rows: Vec<SweepRow> = values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| sweep_one(cfg, axis, v, &out.join(format!("run_{i:03}"))))
        .collect();
    let mut csv = format!("run,{axis},exit_code,status,t_star,t_final,sup_final,message\n");
    for (i, r) in rows.iter().enumerate() {
        writeln!(
            csv,
            "run_{i:03},{:?},{},{},{:?},{:?},{:?},{}",
            r.value,
            r.code,
            r.status,
            r.t_star,
            r.t_final,
            r.sup_final,
            csv_field(&r.message)
        )
        .unwrap();
        println!("{axis}={:?} exit={} status={}{}", r.value, r.code, r.status, if r.message.is_empty() { String::new() } else { format!(" ({})", r.message) });
    }
    write(&out.join("sweep.csv"), &csv)?;
    Ok(if rows.iter().any(|r| r.code == EXIT_ERROR) { EXIT_ERROR } else { EXIT_OK })
}
