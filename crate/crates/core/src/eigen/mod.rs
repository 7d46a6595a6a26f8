//! First eigenpair of the discrete fractional p-Laplacian with zero exterior data,
//! normalized to unit integral.

use crate::error::{param, Error, Result};
use crate::spatial::io::field_to_csv;
use crate::spatial::{phi, Field, FracPLaplacian, Grid, OperatorParams};
use nalgebra::DVector;

const RAYLEIGH_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-9;
const MAX_INVERSE_ITERS: usize = 20_000;
const STALL_WINDOW: usize = 50;
const STALL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda1: f64,
    /// Positive, with sum e1 h^N = 1.
    pub e1: Field,
    pub method: &'static str,
    pub iterations: usize,
    /// |L e - lambda phi(e)|_2 / |e|_2 before normalization (unit 2-norm for p = 2).
    pub residual: f64,
    /// Factor applied to the converged iterate to reach unit integral.
    pub normalization: f64,
}

impl EigenPair {
    /// `lambda1,<value>` followed by the e1 dump as `x[,y],value`.
    pub fn to_csv(&self) -> String {
        format!("lambda1,{:?}\n{}", self.lambda1, field_to_csv(&self.e1))
    }
}

fn normalize_unit_integral(grid: Grid, v: &[f64]) -> Result<(Field, f64)> {
    let sum: f64 = v.iter().sum::<f64>() * grid.cell_volume();
    if !(sum.abs() > 0.0) {
        return Err(Error::Numeric("eigenvector has zero integral".into()));
    }
    let scale = 1.0 / sum;
    Ok((Field::new(grid, v.iter().map(|x| x * scale).collect())?, scale))
}

/// Smallest eigenvalue of the symmetric p = 2 matrix by inverse iteration
/// (Cholesky solve), stopped when the Rayleigh quotient moves by at most 1e-10
/// relative and the residual is at most 1e-9.
pub fn first_eigenpair_linear(grid: Grid, s: f64) -> Result<EigenPair> {
    let op = FracPLaplacian::new(grid, OperatorParams::new(s, 2.0, grid.dim()))?;
    let a = op.matrix()?;
    let chol = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numeric("operator matrix is not positive definite".into()))?;
    let len = grid.len();
    let mut v = DVector::from_element(len, 1.0 / (len as f64).sqrt());
    let mut lambda = v.dot(&(&a * &v));
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_INVERSE_ITERS {
        let mut w = chol.solve(&v);
        w /= w.norm();
        let aw = &a * &w;
        let next = w.dot(&aw);
        residual = (&aw - &w * next).norm();
        let moved = (next - lambda).abs();
        v = w;
        lambda = next;
        if moved <= RAYLEIGH_TOL * lambda.abs() && residual <= RESIDUAL_TOL {
            if v.sum() < 0.0 {
                v = -v;
            }
            let (e1, normalization) = normalize_unit_integral(grid, v.as_slice())?;
            return Ok(EigenPair { lambda1: lambda, e1, method: "inverse-iteration", iterations: it, residual, normalization });
        }
    }
    Err(Error::NonlinearSolve {
        iterations: MAX_INVERSE_ITERS,
        residual,
        reason: "inverse iteration stagnated".into(),
    })
}

/// Quotient sum u (L u) h^N / sum |u|^p h^N; the numerator is half the
/// Gagliardo seminorm of the zero extension.
pub fn rayleigh_quotient(op: &FracPLaplacian, u: &[f64]) -> f64 {
    let p = op.params().p;
    let lu = op.apply_values(u);
    let num: f64 = u.iter().zip(&lu).map(|(a, b)| a * b).sum();
    let den: f64 = u.iter().map(|v| v.abs().powf(p)).sum();
    num / den
}

fn p_normalize(u: &mut [f64], p: f64) {
    let n: f64 = u.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    if n > 0.0 {
        u.iter_mut().for_each(|v| *v /= n);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlapEigen {
    pub pair: EigenPair,
    /// Quotient after every accepted step.
    pub quotients: Vec<f64>,
}

/// Projected gradient descent on the quotient from `init` (positive constant if
/// None): step, clamp at 0, renormalize to unit p-norm, with Armijo backtracking
/// from a step that doubles after each accepted iteration.
pub fn first_eigenpair_plap_from(
    grid: Grid,
    s: f64,
    p: f64,
    max_iters: usize,
    step_size: f64,
    init: Option<&Field>,
) -> Result<PlapEigen> {
    if !(p > 1.0) {
        return Err(param(format!("p = {p} must exceed 1")));
    }
    if !(step_size > 0.0) {
        return Err(param("step_size must be positive"));
    }
    let op = FracPLaplacian::new(grid, OperatorParams::new(s, p, grid.dim()))?;
    let mut u = match init {
        Some(f) => {
            grid.same_as(&f.grid)?;
            if f.values.iter().any(|&v| v < 0.0) || f.max() <= 0.0 {
                return Err(param("initial field must be nonnegative and nonzero"));
            }
            f.values.clone()
        }
        None => vec![1.0; grid.len()],
    };
    p_normalize(&mut u, p);
    let mut q = rayleigh_quotient(&op, &u);
    let mut quotients = vec![q];
    let mut tau = step_size;
    for it in 1..=max_iters {
        // Gradient of the 0-homogeneous quotient at unit p-norm, up to the factor p.
        let lu = op.apply_values(&u);
        let g: Vec<f64> = lu.iter().zip(&u).map(|(l, &v)| l - q * phi(v, p)).collect();
        let mut accepted = None;
        for _ in 0..60 {
            let mut cand: Vec<f64> = u.iter().zip(&g).map(|(v, gi)| (v - tau * gi).max(0.0)).collect();
            if cand.iter().all(|&v| v == 0.0) {
                tau *= 0.5;
                continue;
            }
            let descent: f64 = g.iter().zip(u.iter().zip(&cand)).map(|(gi, (a, b))| gi * (a - b)).sum();
            p_normalize(&mut cand, p);
            let qc = rayleigh_quotient(&op, &cand);
            if qc <= q - 1e-4 * descent.max(0.0) && qc <= q {
                accepted = Some((cand, qc));
                break;
            }
            tau *= 0.5;
        }
        let Some((cand, qc)) = accepted else {
            if q - quotients[quotients.len().saturating_sub(STALL_WINDOW + 1)] > -STALL_TOL * q {
                // No admissible descent left: treat as converged at round-off.
                break;
            }
            return Err(Error::Numeric(format!("quotient not decreasing after backtracking at iteration {it}")));
        };
        u = cand;
        q = qc;
        quotients.push(q);
        tau *= 2.0;
        let n = quotients.len();
        if n > STALL_WINDOW && quotients[n - 1 - STALL_WINDOW] - q < STALL_TOL * q {
            break;
        }
        if it == max_iters {
            return Err(Error::NonlinearSolve {
                iterations: max_iters,
                residual: quotients[n.saturating_sub(STALL_WINDOW + 1)] - q,
                reason: "quotient still decreasing".into(),
            });
        }
    }
    let lu = op.apply_values(&u);
    let unorm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = lu.iter().zip(&u).map(|(l, &v)| (l - q * phi(v, p)).powi(2)).sum::<f64>().sqrt() / unorm;
    let (e1, normalization) = normalize_unit_integral(grid, &u)?;
    let iterations = quotients.len() - 1;
    Ok(PlapEigen {
        pair: EigenPair { lambda1: q, e1, method: "projected-gradient", iterations, residual, normalization },
        quotients,
    })
}

pub fn first_eigenpair_plap(grid: Grid, s: f64, p: f64, max_iters: usize, step_size: f64) -> Result<EigenPair> {
    Ok(first_eigenpair_plap_from(grid, s, p, max_iters, step_size, None)?.pair)
}
