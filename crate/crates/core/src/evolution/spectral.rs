use super::params::SimParams;
use super::stepper::{kernel_info, Stepper};
use super::trajectory::{Status, Trajectory};
use crate::error::{param, Error, Result};
use crate::fractional_time::MlKernel;
use crate::special::{mittag_leffler, mittag_leffler2, rgamma};
use crate::spatial::{FracPLaplacian, Field, Grid, Kernel};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

const FP_TOL: f64 = 1e-10;
const FP_MAX_ITERS: usize = 100;

/// Eigendecomposition A = V diag(a) V^T of the discrete p = 2 operator times
/// diffusion_scale, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralOperator {
    pub grid: Grid,
    pub alpha: f64,
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns (Euclidean inner product).
    pub vectors: DMatrix<f64>,
}

impl SpectralOperator {
    pub fn new(grid: Grid, params: &SimParams) -> Result<Self> {
        params.validate(grid.dim())?;
        if params.op.p != 2.0 {
            return Err(param(format!("spectral path needs p = 2, got {}", params.op.p)));
        }
        let a = FracPLaplacian::new(grid, params.op)?.matrix()?;
        let scale = a.amax();
        let asym = (&a - a.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::Numeric(format!("operator matrix not symmetric (defect {asym:e})")));
        }
        let a = (&a + a.transpose()) * (0.5 * params.diffusion_scale);
        let eig = SymmetricEigen::try_new(a, 1e-14, 0)
            .ok_or_else(|| Error::Numeric("symmetric eigendecomposition did not converge".into()))?;
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        if params.diffusion_scale > 0.0 && !(eigenvalues[0] > 0.0) {
            return Err(Error::Numeric(format!("smallest eigenvalue {:e} is not positive", eigenvalues[0])));
        }
        let vectors = DMatrix::from_fn(grid.len(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(SpectralOperator { grid, alpha: params.alpha, eigenvalues, vectors })
    }

    pub fn to_modes(&self, u: &[f64]) -> DVector<f64> {
        self.vectors.tr_mul(&DVector::from_column_slice(u))
    }

    pub fn from_modes(&self, c: &DVector<f64>) -> Vec<f64> {
        (&self.vectors * c).iter().copied().collect()
    }

    /// Applies g(a_i) mode by mode.
    fn apply_symbol(&self, phi: &Field, g: impl Fn(f64) -> Result<f64>) -> Result<Field> {
        self.grid.same_as(&phi.grid)?;
        let mut c = self.to_modes(&phi.values);
        for (ci, &a) in c.iter_mut().zip(&self.eigenvalues) {
            *ci *= g(a)?;
        }
        Field::new(self.grid, self.from_modes(&c))
    }

    /// S(t) phi = sum E_alpha(-a_i t^alpha) <phi, v_i> v_i.
    pub fn semigroup(&self, t: f64, phi: &Field) -> Result<Field> {
        let ta = t.powf(self.alpha);
        self.apply_symbol(phi, |a| mittag_leffler(self.alpha, -a * ta))
    }

    /// K(t) phi = sum E_{alpha,alpha}(-a_i t^alpha) <phi, v_i> v_i.
    pub fn resolvent(&self, t: f64, phi: &Field) -> Result<Field> {
        let ta = t.powf(self.alpha);
        self.apply_symbol(phi, |a| mittag_leffler2(self.alpha, self.alpha, -a * ta))
    }
}

/// Mild solution u = S(t) u0 + int_0^t (t - s)^{alpha-1} K(t - s) f(u(s)) ds of the
/// competition model, with f piecewise linear in time (product integration) and a
/// fixed point on each new time level.
pub fn spectral_duhamel_run(u0: &Field, params: &SimParams, kernel: &Kernel) -> Result<Trajectory> {
    let op = SpectralOperator::new(u0.grid, params)?;
    spectral_duhamel_with(&op, u0, params, kernel)
}

pub fn spectral_duhamel_with(op: &SpectralOperator, u0: &Field, params: &SimParams, kernel: &Kernel) -> Result<Trajectory> {
    op.grid.same_as(&u0.grid)?;
    u0.check_finite()?;
    if u0.min() < 0.0 {
        return Err(Error::Domain(format!("initial data must be nonnegative, min {:e}", u0.min())));
    }
    let reaction = Stepper::competition(u0.grid, params, kernel)?;
    let steps = params.steps();
    let dt = params.dt;
    let alpha = params.alpha;
    let modes = op.eigenvalues.len();

    // Per mode: semigroup factors E[n] and interval weights (wa[j], wb[j]) for the
    // interval [t_{n-j}, t_{n-j+1}] seen from t_n.
    struct ModeTables {
        e: Vec<f64>,
        wa: Vec<f64>,
        wb: Vec<f64>,
    }
    let tables: Vec<ModeTables> = op
        .eigenvalues
        .par_iter()
        .map(|&a| -> Result<ModeTables> {
            let mk = MlKernel { alpha, lambda: -a };
            let mut p0 = Vec::with_capacity(steps + 1);
            let mut p1 = Vec::with_capacity(steps + 1);
            let mut e = Vec::with_capacity(steps + 1);
            for j in 0..=steps {
                let s = j as f64 * dt;
                p0.push(mk.p0(s)?);
                p1.push(mk.p1(s)?);
                e.push(if j == 0 { 1.0 } else { mittag_leffler(alpha, -a * s.powf(alpha))? });
            }
            let mut wa = vec![0.0; steps + 1];
            let mut wb = vec![0.0; steps + 1];
            for j in 1..=steps {
                let i0 = p0[j] - p0[j - 1];
                let i1 = j as f64 * dt * i0 - (p1[j] - p1[j - 1]);
                wb[j] = i1 / dt;
                wa[j] = i0 - wb[j];
            }
            Ok(ModeTables { e, wa, wb })
        })
        .collect::<Result<_>>()?;

    let c0 = op.to_modes(&u0.values);
    let mut fhat: Vec<DVector<f64>> = vec![op.to_modes(&reaction.reaction(&u0.values))];
    let mut traj = Trajectory::start(*params, "spectral-duhamel", kernel_info(kernel), u0);
    let mut u_prev = u0.values.clone();
    for n in 1..=steps {
        let known: Vec<f64> = (0..modes)
            .into_par_iter()
            .map(|i| {
                let tb = &tables[i];
                let mut acc = tb.e[n] * c0[i] + tb.wa[1] * fhat[n - 1][i];
                for j in 2..=n {
                    acc += tb.wa[j] * fhat[n - j][i] + tb.wb[j] * fhat[n - j + 1][i];
                }
                acc
            })
            .collect();
        let mut f_n = fhat[n - 1].clone();
        let mut u = u_prev.clone();
        let mut converged = false;
        let mut delta = f64::INFINITY;
        for _ in 0..FP_MAX_ITERS {
            let c = DVector::from_fn(modes, |i, _| known[i] + tables[i].wb[1] * f_n[i]);
            let next = op.from_modes(&c);
            if next.iter().any(|v| !v.is_finite()) {
                traj.finish(Status::SolverDiverged { t_star: (n - 1) as f64 * dt });
                return Ok(traj);
            }
            let scale = next.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            delta = next.iter().zip(&u).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            u = next;
            f_n = op.to_modes(&reaction.reaction(&u));
            if delta <= FP_TOL * scale {
                converged = true;
                break;
            }
            if scale > params.blowup_threshold {
                break;
            }
        }
        let field = Field { grid: op.grid, values: u };
        let t = n as f64 * dt;
        if field.sup_norm() > params.blowup_threshold {
            traj.record(n, t, &field, 0.0);
            traj.finish(Status::Blowup { t_star: t });
            return Ok(traj);
        }
        if !converged {
            return Err(Error::NonlinearSolve {
                iterations: FP_MAX_ITERS,
                residual: delta,
                reason: format!("Duhamel fixed point at t = {t}"),
            });
        }
        traj.record(n, t, &field, 0.0);
        u_prev = field.values;
        fhat.push(f_n);
    }
    traj.finish(Status::Completed);
    Ok(traj)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBoundReport {
    pub times: Vec<f64>,
    /// max_i |E_alpha(-a_i t^alpha)|, the Euclidean operator norm of S(t).
    pub s_norm: Vec<f64>,
    /// max_i |E_{alpha,alpha}(-a_i t^alpha)|.
    pub k_norm: Vec<f64>,
    /// |S(t) phi| / |phi| and |K(t) phi| / |phi|.
    pub s_ratio: Vec<f64>,
    pub k_ratio: Vec<f64>,
    /// Largest of all the above.
    pub c4_hat: f64,
    /// Everything finite, |S| <= 1 and |K| <= 1/Gamma(alpha).
    pub bounded: bool,
}

pub fn operator_bound_check(op: &SpectralOperator, phi: &Field, t_grid: &[f64]) -> Result<OperatorBoundReport> {
    op.grid.same_as(&phi.grid)?;
    let alpha = op.alpha;
    let pn = phi.lp_norm(2.0);
    let mut r = OperatorBoundReport {
        times: t_grid.to_vec(),
        s_norm: Vec::new(),
        k_norm: Vec::new(),
        s_ratio: Vec::new(),
        k_ratio: Vec::new(),
        c4_hat: 0.0,
        bounded: true,
    };
    let cap_k = rgamma(alpha);
    for &t in t_grid {
        if t < 0.0 {
            return Err(param("negative time in bound check"));
        }
        let ta = t.powf(alpha);
        let mut sn: f64 = 0.0;
        let mut kn: f64 = 0.0;
        for &a in &op.eigenvalues {
            sn = sn.max(mittag_leffler(alpha, -a * ta)?.abs());
            kn = kn.max(mittag_leffler2(alpha, alpha, -a * ta)?.abs());
        }
        let (sr, kr) = if pn > 0.0 {
            (op.semigroup(t, phi)?.lp_norm(2.0) / pn, op.resolvent(t, phi)?.lp_norm(2.0) / pn)
        } else {
            (0.0, 0.0)
        };
        r.c4_hat = r.c4_hat.max(sn).max(kn).max(sr).max(kr);
        r.bounded &= sn.is_finite() && kn.is_finite() && sn <= 1.0 + 1e-12 && kn <= cap_k * (1.0 + 1e-12);
        r.s_norm.push(sn);
        r.k_norm.push(kn);
        r.s_ratio.push(sr);
        r.k_ratio.push(kr);
    }
    Ok(r)
}
