//! Empirical estimates of functional-inequality constants from random smooth
//! trial fields. Every estimate records how it was obtained.

use super::field::Field;
use super::grid::Grid;
use super::operator::{FracPLaplacian, OperatorParams};
use super::seminorm::seminorm_full_with;
use crate::error::{param, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantEstimate {
    pub value: f64,
    pub trials: usize,
    pub skipped: usize,
    pub seed: u64,
    pub provenance: String,
}

/// Sum of 1 to 3 positive Gaussian bumps; parameters are drawn in box units so the
/// same seed yields the same continuum trial on every resolution.
pub fn trial_field(grid: Grid, rng: &mut ChaCha8Rng) -> Field {
    let l = grid.half_width();
    let dim = grid.dim();
    let bumps: Vec<([f64; 2], f64, f64)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut c = [0.0; 2];
            for ci in c.iter_mut().take(dim) {
                *ci = rng.gen_range(-0.4 * l..0.4 * l);
            }
            (c, rng.gen_range(0.08 * l..0.3 * l), rng.gen_range(0.2..1.0))
        })
        .collect();
    Field::from_fn(grid, |x| {
        bumps
            .iter()
            .map(|(c, w, a)| {
                let r2 = (x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2);
                a * (-r2 / (2.0 * w * w)).exp()
            })
            .sum()
    })
}

/// Exponents of the cubic Gagliardo-Nirenberg ratio
/// int u^3 / (|grad u|_2^{grad} |u|_2^{l2} + |u|_2^3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnExponents {
    pub grad: f64,
    pub l2: f64,
}

impl GnExponents {
    pub fn for_dim(dim: usize) -> Self {
        let n = dim as f64;
        GnExponents { grad: n / 2.0, l2: 3.0 - n / 2.0 }
    }
}

fn gradient_l2(u: &Field) -> f64 {
    let g = u.grid;
    let n = g.n() as i64;
    let h = g.h();
    let at = |x: i64, y: i64| -> f64 {
        if x < 0 || y < 0 || x >= n || y >= n {
            0.0
        } else {
            u.values[g.flat(x as usize, y as usize)]
        }
    };
    let mut acc = 0.0;
    for i in 0..g.len() {
        let (ix, iy) = g.split(i);
        let (x, y) = (ix as i64, iy as i64);
        let gx = (at(x + 1, y) - at(x - 1, y)) / (2.0 * h);
        acc += gx * gx;
        if g.dim() == 2 {
            let gy = (at(x, y + 1) - at(x, y - 1)) / (2.0 * h);
            acc += gy * gy;
        }
    }
    (acc * g.cell_volume()).sqrt()
}

pub fn gn_ratio(u: &Field, exps: GnExponents) -> Option<f64> {
    let cube: f64 = u.values.iter().map(|v| v * v * v).sum::<f64>() * u.grid.cell_volume();
    let l2 = u.lp_norm(2.0);
    let den = gradient_l2(u).powf(exps.grad) * l2.powf(exps.l2) + l2.powi(3);
    if den > 0.0 && den.is_finite() {
        Some(cube / den)
    } else {
        None
    }
}

/// Running maximum of the GN ratio over `trial_count` random trials.
pub fn estimate_gn_constant(grid: Grid, exps: GnExponents, trial_count: usize, seed: u64) -> Result<ConstantEstimate> {
    if trial_count < 100 {
        return Err(param("at least 100 trials are required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    let mut skipped = 0;
    for _ in 0..trial_count {
        match gn_ratio(&trial_field(grid, &mut rng), exps) {
            Some(r) => best = best.max(r),
            None => skipped += 1,
        }
    }
    Ok(ConstantEstimate {
        value: best,
        trials: trial_count,
        skipped,
        seed,
        provenance: format!(
            "max of int u^3 / (|grad u|^{} |u|^{} + |u|^3) over Gaussian-sum trials, dim {}, n {}, L {}",
            exps.grad,
            exps.l2,
            grid.dim(),
            grid.n(),
            grid.half_width()
        ),
    })
}

/// [u]^p over R^N divided by (int |u|^{p*})^{p/p*}, p* = Np/(N - sp).
pub fn sobolev_ratio(op: &FracPLaplacian, u: &Field) -> Option<f64> {
    let n = u.grid.dim() as f64;
    let prm = op.params();
    let pstar = n * prm.p / (n - prm.s * prm.p);
    let num = seminorm_full_with(op, u);
    let den = (u.values.iter().map(|v| v.abs().powf(pstar)).sum::<f64>() * u.grid.cell_volume()).powf(prm.p / pstar);
    if den > 0.0 && num.is_finite() {
        Some(num / den)
    } else {
        None
    }
}

pub fn estimate_sobolev_constant(grid: Grid, s: f64, p: f64, trial_count: usize, seed: u64) -> Result<ConstantEstimate> {
    if !(s * p < grid.dim() as f64) {
        return Err(param(format!("Sobolev estimate needs s p < N, got {}", s * p)));
    }
    let op = FracPLaplacian::new(grid, OperatorParams::new(s, p, grid.dim()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut skipped = 0;
    for _ in 0..trial_count {
        match sobolev_ratio(&op, &trial_field(grid, &mut rng)) {
            Some(r) => best = best.min(r),
            None => skipped += 1,
        }
    }
    Ok(ConstantEstimate {
        value: best,
        trials: trial_count,
        skipped,
        seed,
        provenance: format!(
            "min of [u]^p / |u|_(p*)^p over Gaussian-sum trials, s {s}, p {p}, dim {}, n {}, L {}",
            grid.dim(),
            grid.n(),
            grid.half_width()
        ),
    })
}

/// |a-b|^{p-2}(a-b)(a^alpha - b^alpha) / |a^{(p+alpha-1)/p} - b^{(p+alpha-1)/p}|^p.
pub fn inequality_233_ratio(p: f64, alpha: f64, a: f64, b: f64) -> Option<f64> {
    if a == b {
        return None;
    }
    let d = a - b;
    let num = d.abs().powf(p - 2.0) * d * (a.powf(alpha) - b.powf(alpha));
    let e = (p + alpha - 1.0) / p;
    let den = (a.powf(e) - b.powf(e)).abs().powf(p);
    if den > 0.0 {
        Some(num / den)
    } else {
        None
    }
}

/// Infimum of the ratio over (a, b) drawn uniformly from (0, 10]^2.
pub fn inequality_233_constant(p: f64, alpha: f64, sample_count: usize, seed: u64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(param("p must exceed 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(param("alpha must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..sample_count {
        let a = 10.0 - rng.gen_range(0.0..10.0);
        let b = 10.0 - rng.gen_range(0.0..10.0);
        if let Some(r) = inequality_233_ratio(p, alpha, a, b) {
            best = best.min(r);
        }
    }
    Ok(best)
}
