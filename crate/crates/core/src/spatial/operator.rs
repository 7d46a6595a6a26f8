use super::field::Field;
use super::grid::{Grid, Region};
use super::toeplitz::ToeplitzConv;
use crate::error::{param, Error, Result};
use crate::quad::{integrate, integrate_with_breaks};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Closed-form exterior integral; 1D only.
    Analytic1d,
    /// Adaptive quadrature of the exterior integral.
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularMode {
    SkipDiagonal,
    /// Adds the excluded-cell integral of a central quadratic reconstruction.
    LocalCorrection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    pub s: f64,
    pub p: f64,
    pub tail_mode: TailMode,
    pub singular_mode: SingularMode,
}

impl OperatorParams {
    /// Diagonal exclusion with the analytic tail in 1D, numeric tail in 2D.
    pub fn new(s: f64, p: f64, dim: usize) -> Self {
        OperatorParams {
            s,
            p,
            tail_mode: if dim == 1 { TailMode::Analytic1d } else { TailMode::Numeric },
            singular_mode: SingularMode::SkipDiagonal,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(param(format!("s = {} outside (0, 1)", self.s)));
        }
        if !(self.p > 1.0) {
            return Err(param(format!("p = {} must exceed 1", self.p)));
        }
        if !(self.s * self.p < dim as f64 + self.p) {
            return Err(param("s p must be below N + p"));
        }
        if self.tail_mode == TailMode::Analytic1d && dim != 1 {
            return Err(param("analytic tail is available in 1D only"));
        }
        if self.singular_mode == SingularMode::LocalCorrection && !(self.p * (1.0 - self.s) > 1.0) {
            return Err(param("local correction needs p (1 - s) > 1 for an integrable cell term"));
        }
        Ok(())
    }

    /// 1 < p < 4/3 and s p < 1.
    pub fn validate_porous(&self) -> Result<()> {
        if !(self.p > 1.0 && self.p < 4.0 / 3.0) {
            return Err(Error::Regime(format!("porous regime requires 1 < p < 4/3, got p = {}", self.p)));
        }
        if !(self.s * self.p < 1.0) {
            return Err(Error::Regime(format!("porous regime requires s p < 1, got {}", self.s * self.p)));
        }
        Ok(())
    }

    pub fn exponent(&self, dim: usize) -> f64 {
        dim as f64 + self.s * self.p
    }
}

/// |d|^{p-2} d.
#[inline]
pub fn phi(d: f64, p: f64) -> f64 {
    if p == 2.0 {
        d
    } else if d == 0.0 {
        0.0
    } else {
        d.abs().powf(p - 1.0) * d.signum()
    }
}

/// Exterior integral T(x) = int_{outside box} |x - y|^{-(N + sp)} dy.
pub fn exterior_tail(grid: &Grid, params: &OperatorParams, x: [f64; 2]) -> f64 {
    let sp = params.s * params.p;
    let b = grid.box_half_width();
    match (grid.dim(), params.tail_mode) {
        (1, TailMode::Analytic1d) => ((b - x[0]).powf(-sp) + (b + x[0]).powf(-sp)) / sp,
        (1, _) => {
            // int_D^inf r^{-1-sp} dr with r = D e^v.
            let side = |d: f64| {
                let v_max = 60.0 / sp;
                integrate(|v| d.powf(-sp) * (-sp * v).exp(), 0.0, v_max, 1e-15, 1e-14).value
            };
            side(b - x[0]) + side(b + x[0])
        }
        _ => {
            // (1/sp) int_0^{2 pi} R(theta)^{-sp} d theta, R = distance to the box edge.
            let r = |th: f64| {
                let (c, s) = (th.cos(), th.sin());
                let mut t = f64::INFINITY;
                if c > 0.0 {
                    t = t.min((b - x[0]) / c);
                } else if c < 0.0 {
                    t = t.min((-b - x[0]) / c);
                }
                if s > 0.0 {
                    t = t.min((b - x[1]) / s);
                } else if s < 0.0 {
                    t = t.min((-b - x[1]) / s);
                }
                t
            };
            let mut corners: Vec<f64> = [(b, b), (-b, b), (-b, -b), (b, -b)]
                .iter()
                .map(|&(cx, cy)| (cy - x[1]).atan2(cx - x[0]).rem_euclid(2.0 * PI))
                .collect();
            corners.extend([0.5 * PI, PI, 1.5 * PI]);
            let res = integrate_with_breaks(|th| r(th).powf(-sp), 0.0, 2.0 * PI, &corners, 1e-14, 1e-13, 4000);
            res.value / sp
        }
    }
}

/// Discrete fractional p-Laplacian on a grid with zero exterior extension:
/// (L u)_x = sum_{y != x} phi(u_x - u_y) |x - y|^{-(N+sp)} h^N + phi(u_x) T(x).
#[derive(Debug, Clone)]
pub struct FracPLaplacian {
    grid: Grid,
    params: OperatorParams,
    /// Pair weights by |offset|: index |dx| in 1D, |dy| * n + |dx| in 2D.
    weights: Vec<f64>,
    tail: Vec<f64>,
    /// For p = 2 the cell correction is -cell_moment * (trace of the Hessian).
    cell_moment: f64,
}

impl FracPLaplacian {
    pub fn new(grid: Grid, params: OperatorParams) -> Result<Self> {
        params.validate(grid.dim())?;
        let n = grid.n();
        let h = grid.h();
        let hv = grid.cell_volume();
        let e = params.exponent(grid.dim());
        let weights = if grid.dim() == 1 {
            (0..n).map(|d| if d == 0 { 0.0 } else { (d as f64 * h).powf(-e) * hv }).collect()
        } else {
            let mut w = vec![0.0; n * n];
            for dy in 0..n {
                for dx in 0..n {
                    if dx + dy > 0 {
                        let r = h * ((dx * dx + dy * dy) as f64).sqrt();
                        w[dy * n + dx] = r.powf(-e) * hv;
                    }
                }
            }
            w
        };
        let tail = (0..grid.len()).into_par_iter().map(|i| exterior_tail(&grid, &params, grid.point(i))).collect();
        let mut cell_moment = 0.0;
        if params.p == 2.0 && params.singular_mode == SingularMode::LocalCorrection {
            let m = 2.0 - params.s * 2.0;
            cell_moment = if grid.dim() == 1 {
                (0.5 * h).powf(m) / m
            } else {
                let r = |th: f64| 0.5 * h / th.cos().abs().max(th.sin().abs());
                let brk = [0.25 * PI, 0.5 * PI, 0.75 * PI];
                integrate_with_breaks(|th| th.cos().powi(2) * r(th).powf(m), 0.0, PI, &brk, 1e-16, 1e-14, 400).value / m
            };
        }
        let op = FracPLaplacian { grid, params, weights, tail, cell_moment };
        Ok(op)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn params(&self) -> &OperatorParams {
        &self.params
    }
    pub fn tail(&self) -> &[f64] {
        &self.tail
    }

    /// Pair weight |x - y|^{-(N+sp)} h^N for node offsets (dx, dy).
    #[inline]
    pub fn weight(&self, dx: usize, dy: usize) -> f64 {
        if self.grid.dim() == 1 {
            self.weights[dx]
        } else {
            self.weights[dy * self.grid.n() + dx]
        }
    }

    #[inline]
    fn pair_weight(&self, i: usize, j: usize) -> f64 {
        let (ix, iy) = self.grid.split(i);
        let (jx, jy) = self.grid.split(j);
        self.weight(ix.abs_diff(jx), iy.abs_diff(jy))
    }

    pub fn apply(&self, u: &Field) -> Result<Field> {
        self.grid.same_as(&u.grid)?;
        if u.values.iter().any(|v| v.is_nan()) {
            return Err(Error::Data("NaN in operator input".into()));
        }
        Ok(Field { grid: self.grid, values: self.apply_values(&u.values) })
    }

    /// Dense reference evaluation, parallel over output nodes; each node's sum runs
    /// in a fixed order so results do not depend on the thread count.
    pub fn apply_values(&self, u: &[f64]) -> Vec<f64> {
        let p = self.params.p;
        let len = self.grid.len();
        let mut out: Vec<f64> = (0..len)
            .into_par_iter()
            .map(|i| {
                let ui = u[i];
                let mut acc = 0.0;
                for j in 0..len {
                    if j != i {
                        acc += phi(ui - u[j], p) * self.pair_weight(i, j);
                    }
                }
                acc + phi(ui, p) * self.tail[i]
            })
            .collect();
        if self.params.singular_mode == SingularMode::LocalCorrection {
            for (o, c) in out.iter_mut().zip(self.cell_correction(u)) {
                *o += c;
            }
        }
        out
    }

    /// Interior-only operator on `region`: sum over y in region, y != x, no tail.
    pub fn apply_restricted(&self, u: &[f64], region: &Region) -> Vec<(usize, f64)> {
        let nodes = region.nodes(&self.grid);
        let p = self.params.p;
        nodes
            .par_iter()
            .map(|&i| {
                let mut acc = 0.0;
                for &j in &nodes {
                    if j != i {
                        acc += phi(u[i] - u[j], p) * self.pair_weight(i, j);
                    }
                }
                (i, acc)
            })
            .collect()
    }

    /// int over the excluded cell of phi(u(x) - u(x+z)) |z|^{-(N+sp)} dz with u
    /// replaced by its central quadratic reconstruction (gradient g, Hessian H).
    /// Pairing z with -z and writing z = r e, r = R t^{1/q}, q = p - 1 - sp, the
    /// cell term is int_e R^q/q int_0^1 [phi(g.e - r e.He/2) - phi(g.e + r e.He/2)] dt.
    pub fn cell_correction(&self, u: &[f64]) -> Vec<f64> {
        if self.params.singular_mode != SingularMode::LocalCorrection {
            return vec![0.0; u.len()];
        }
        let p = self.params.p;
        let q = p - 1.0 - self.params.s * p;
        let half = 0.5 * self.grid.h();
        (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let (ix, iy) = self.grid.split(i);
                let (g, hess) = self.local_derivatives(u, ix, iy);
                if p == 2.0 {
                    return -self.cell_moment * (hess[0] + hess[2]);
                }
                let radial = |a: f64, b: f64, r_max: f64| {
                    let f = |t: f64| {
                        let r = r_max * t.powf(1.0 / q);
                        phi(a - 0.5 * r * b, p) - phi(a + 0.5 * r * b, p)
                    };
                    r_max.powf(q) / q * integrate(f, 0.0, 1.0, 1e-15, 1e-11).value
                };
                if self.grid.dim() == 1 {
                    radial(g[0], hess[0], half)
                } else {
                    let f = |th: f64| {
                        let (c, s) = (th.cos(), th.sin());
                        let b = hess[0] * c * c + 2.0 * hess[1] * c * s + hess[2] * s * s;
                        radial(g[0] * c + g[1] * s, b, half / c.abs().max(s.abs()))
                    };
                    integrate_with_breaks(f, 0.0, PI, &[0.25 * PI, 0.5 * PI, 0.75 * PI], 1e-14, 1e-10, 400).value
                }
            })
            .collect()
    }

    /// Central gradient and Hessian [xx, xy, yy] with zero values outside the grid.
    fn local_derivatives(&self, u: &[f64], ix: usize, iy: usize) -> ([f64; 2], [f64; 3]) {
        let n = self.grid.n() as i64;
        let h = self.grid.h();
        let at = |x: i64, y: i64| -> f64 {
            if x < 0 || y < 0 || x >= n || y >= n {
                0.0
            } else {
                u[self.grid.flat(x as usize, y as usize)]
            }
        };
        let (x, y) = (ix as i64, iy as i64);
        let c = at(x, y);
        let gx = (at(x + 1, y) - at(x - 1, y)) / (2.0 * h);
        let hxx = (at(x + 1, y) - 2.0 * c + at(x - 1, y)) / (h * h);
        if self.grid.dim() == 1 {
            return ([gx, 0.0], [hxx, 0.0, 0.0]);
        }
        let gy = (at(x, y + 1) - at(x, y - 1)) / (2.0 * h);
        let hyy = (at(x, y + 1) - 2.0 * c + at(x, y - 1)) / (h * h);
        let hxy = (at(x + 1, y + 1) - at(x + 1, y - 1) - at(x - 1, y + 1) + at(x - 1, y - 1)) / (4.0 * h * h);
        ([gx, gy], [hxx, hxy, hyy])
    }

    fn require_linear(&self) -> Result<()> {
        if self.params.p != 2.0 {
            return Err(param("the linear fast path and matrix need p = 2"));
        }
        Ok(())
    }

    /// Toeplitz evaluation for p = 2:
    /// (L u)_i = (rowsum_i + T_i) u_i - sum_{j != i} w_{i-j} u_j (+ cell correction).
    pub fn fast_linear(&self) -> Result<LinearFastPath> {
        self.require_linear()?;
        let conv = ToeplitzConv::new(&self.grid, |dx, dy| self.weight(dx.unsigned_abs() as usize, dy.unsigned_abs() as usize));
        // Row sums by direct summation keep the diagonal free of FFT round-off.
        let exact_rowsum: Vec<f64> = (0..self.grid.len())
            .into_par_iter()
            .map(|i| (0..self.grid.len()).filter(|&j| j != i).map(|j| self.pair_weight(i, j)).sum())
            .collect();
        let diag = exact_rowsum.iter().zip(&self.tail).map(|(r, t)| r + t).collect();
        Ok(LinearFastPath { conv, diag })
    }

    pub fn apply_fast(&self, path: &LinearFastPath, u: &Field) -> Result<Field> {
        self.require_linear()?;
        self.grid.same_as(&u.grid)?;
        let off = path.conv.apply(&u.values);
        let mut values: Vec<f64> = u.values.iter().zip(&path.diag).zip(&off).map(|((v, d), o)| d * v - o).collect();
        if self.params.singular_mode == SingularMode::LocalCorrection {
            for (o, c) in values.iter_mut().zip(self.cell_correction(&u.values)) {
                *o += c;
            }
        }
        Ok(Field { grid: self.grid, values })
    }

    /// Dense matrix of the p = 2 operator (symmetric for skip_diagonal).
    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        self.require_linear()?;
        let len = self.grid.len();
        let mut a = DMatrix::zeros(len, len);
        for i in 0..len {
            let mut row = 0.0;
            for j in 0..len {
                if j != i {
                    let w = self.pair_weight(i, j);
                    a[(i, j)] = -w;
                    row += w;
                }
            }
            a[(i, i)] = row + self.tail[i];
        }
        if self.params.singular_mode == SingularMode::LocalCorrection {
            let mut e = vec![0.0; len];
            for j in 0..len {
                e[j] = 1.0;
                let c = self.cell_correction(&e);
                for i in 0..len {
                    a[(i, j)] += c[i];
                }
                e[j] = 0.0;
            }
        }
        Ok(a)
    }
}

pub struct LinearFastPath {
    conv: ToeplitzConv,
    diag: Vec<f64>,
}

/// Builds the operator and applies it once.
pub fn frac_p_laplacian(u: &Field, params: &OperatorParams) -> Result<Field> {
    FracPLaplacian::new(u.grid, *params)?.apply(u)
}
