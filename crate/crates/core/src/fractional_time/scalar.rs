use super::bounds::BoundCurve;
use super::l1::{l1_scale, l1_weights, CaputoHistory};
use crate::error::{param, Error, Result};
use crate::special::{gamma, mittag_leffler, rgamma};
use nalgebra::{DMatrix, DVector};

const FP_TOL: f64 = 1e-12;
const FP_MAX_ITERS: usize = 200;

/// u(t) = u0 E_alpha(-w t^alpha) on the grid; alpha = 1 gives the exponential.
pub fn solve_relaxation(alpha: f64, w: f64, u0: f64, t_grid: &[f64]) -> Result<BoundCurve> {
    if !(w > 0.0) {
        return Err(param("relaxation rate w must be positive"));
    }
    let values = t_grid
        .iter()
        .map(|&t| {
            if t < 0.0 {
                return Err(param("negative time"));
            }
            Ok(u0 * mittag_leffler(alpha, -w * t.powf(alpha))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve::new(
        t_grid.to_vec(),
        values,
        "relaxation",
        "u0 * E_alpha(-w t^alpha)",
    ))
}

/// Solves c (u - u_prev + memory) = rhs(u) for u: damped fixed point first, then
/// bisection on a bracket grown around u_prev.
pub(crate) fn solve_implicit(c: f64, u_prev: f64, memory: f64, rhs: &dyn Fn(f64) -> f64) -> Result<f64> {
    let g = |u: f64| u_prev - memory + rhs(u) / c;
    let mut u = u_prev;
    let mut theta = 1.0;
    let mut last_step = f64::INFINITY;
    let mut step = f64::INFINITY;
    for _ in 0..FP_MAX_ITERS {
        let next = (1.0 - theta) * u + theta * g(u);
        if !next.is_finite() {
            break;
        }
        step = (next - u).abs();
        u = next;
        if step <= FP_TOL * u.abs().max(1.0) {
            return Ok(u);
        }
        if step > last_step && theta == 1.0 {
            theta = 0.5;
        }
        last_step = step;
    }
    let f = |u: f64| u - g(u);
    let scale = u_prev.abs().max(memory.abs()).max(1e-3);
    let f0 = f(u_prev);
    if f0 == 0.0 {
        return Ok(u_prev);
    }
    let mut bracket = None;
    let mut d = scale * 1e-3;
    for _ in 0..80 {
        for cand in [u_prev + d, u_prev - d] {
            let fc = f(cand);
            if fc.is_finite() && fc.signum() != f0.signum() {
                bracket = Some(if cand > u_prev { (u_prev, cand) } else { (cand, u_prev) });
                break;
            }
        }
        if bracket.is_some() {
            break;
        }
        d *= 2.0;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| Error::NonlinearSolve {
        iterations: FP_MAX_ITERS,
        residual: step,
        reason: "fixed point did not converge and no sign change was found".into(),
    })?;
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || (hi - lo) <= FP_TOL * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One implicit L1 step for D^alpha u = rhs(u); returns u_{n+1} without
/// appending it.
pub fn step_scalar_implicit(history: &CaputoHistory, rhs: &dyn Fn(f64) -> f64) -> Result<f64> {
    let c = l1_scale(history.alpha(), history.dt());
    solve_implicit(c, history.last(), history.memory_for_next(), rhs)
}

/// Exponents k*alpha below `cap`: the singular powers of t carried by solutions of
/// D^alpha u = f(u) with smooth f.
pub fn singular_exponents(alpha: f64, cap: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 1.0;
    while k * alpha < cap - 1e-12 {
        if (k * alpha - (k * alpha).round()).abs() > 1e-12 {
            out.push(k * alpha);
        }
        k += 1.0;
    }
    out
}

/// Starting weights w_{n,k} (k = 1..m) making the corrected L1 operator exact on
/// t^sigma for each sigma in `sigmas`, at step n (unit spacing).
fn correction_weights(alpha: f64, sigmas: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    let m = sigmas.len();
    let g2 = gamma(2.0 - alpha);
    let mut v = DMatrix::zeros(m, m);
    let mut r = DVector::zeros(m);
    for (l, &sig) in sigmas.iter().enumerate() {
        for k in 1..=m {
            v[(l, k - 1)] = (k as f64).powf(sig);
        }
        let exact = g2 * gamma(sig + 1.0) * rgamma(sig + 1.0 - alpha) * (n as f64).powf(sig - alpha);
        let mut l1 = 0.0;
        for j in 0..n {
            l1 += b[j] * (((n - j) as f64).powf(sig) - ((n - j - 1) as f64).powf(sig));
        }
        r[l] = exact - l1;
    }
    let sol = v
        .lu()
        .solve(&r)
        .ok_or_else(|| Error::Numeric("singular starting-weight system".into()))?;
    Ok(sol.iter().copied().collect())
}

/// Solves D^alpha u = rhs(u), u(0) = u0, for `steps` uniform steps with the L1
/// scheme plus starting corrections for the exponents in `sigmas` (empty: plain L1).
/// The first `sigmas.len()` values are found together by Newton's method.
pub fn solve_scalar(
    alpha: f64,
    dt: f64,
    u0: f64,
    steps: usize,
    rhs: &dyn Fn(f64) -> f64,
    sigmas: &[f64],
) -> Result<Vec<f64>> {
    let m = sigmas.len();
    if m > 0 && steps < m {
        return Err(param("fewer steps than starting corrections"));
    }
    let b = l1_weights(alpha, steps.max(1))?;
    let c = l1_scale(alpha, dt);
    let mut omega: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    omega.push(vec![0.0; m]);
    for n in 1..=steps {
        omega.push(if m > 0 { correction_weights(alpha, sigmas, &b, n)? } else { Vec::new() });
    }
    let mut u = vec![u0; 1];
    if m > 0 {
        u.extend(starting_block(c, &b, &omega, u0, m, rhs)?);
    }
    let mut hist = CaputoHistory::from_samples(alpha, dt, u.clone())?;
    for n in (m + 1)..=steps {
        let corr: f64 = (0..m).map(|k| omega[n][k] * (u[k + 1] - u0)).sum();
        let next = solve_implicit(c, hist.last(), hist.memory_for_next() + corr, rhs)?;
        hist.push(next);
        u.push(next);
    }
    Ok(u)
}

fn starting_block(
    c: f64,
    b: &[f64],
    omega: &[Vec<f64>],
    u0: f64,
    m: usize,
    rhs: &dyn Fn(f64) -> f64,
) -> Result<Vec<f64>> {
    // Linear part A x - c * offset, x = (u_1 - u0, ..., u_m - u0).
    let mut a = DMatrix::zeros(m, m);
    for n in 1..=m {
        for j in 0..n {
            // b_j (x_{n-j} - x_{n-j-1}), x_0 = 0
            a[(n - 1, n - j - 1)] += c * b[j];
            if n - j >= 2 {
                a[(n - 1, n - j - 2)] -= c * b[j];
            }
        }
        for k in 0..m {
            a[(n - 1, k)] += c * omega[n][k];
        }
    }
    let mut x: DVector<f64> = DVector::zeros(m);
    for _ in 0..50 {
        let mut res = &a * &x;
        let mut jac = a.clone();
        for n in 0..m {
            let un = u0 + x[n];
            let h = 1e-7 * un.abs().max(1.0);
            res[n] -= rhs(un);
            jac[(n, n)] -= (rhs(un + h) - rhs(un - h)) / (2.0 * h);
        }
        let dx = jac
            .lu()
            .solve(&res)
            .ok_or_else(|| Error::Numeric("singular starting-block Jacobian".into()))?;
        x -= &dx;
        if dx.amax() <= FP_TOL * (u0.abs() + x.amax()).max(1.0) {
            return Ok(x.iter().map(|d| u0 + d).collect());
        }
    }
    Err(Error::NonlinearSolve {
        iterations: 50,
        residual: (&a * &x).amax(),
        reason: "starting block Newton iteration did not converge".into(),
    })
}
