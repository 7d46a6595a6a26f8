use super::field::Field;
use super::grid::Grid;
use super::toeplitz::ToeplitzConv;
use crate::error::{param, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelShape {
    /// Constant on the cube |x_i| <= radius.
    Box { radius: f64 },
    /// exp(-|x|^2 / (2 width^2)).
    Gaussian { width: f64 },
}

/// Competition kernel sampled at grid offsets, normalized to unit discrete mass,
/// with the floor min_{B(0, delta0)} J > eta checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub grid: Grid,
    /// Samples at node positions, read as J(x) for offsets x within the grid.
    pub samples: Vec<f64>,
    pub delta0: f64,
    pub eta: f64,
}

impl Kernel {
    pub fn new(grid: Grid, shape: KernelShape, delta0: f64, eta: f64) -> Result<Self> {
        let samples = (0..grid.len())
            .map(|i| {
                let p = grid.point(i);
                match shape {
                    KernelShape::Box { radius } => {
                        let inside = (0..grid.dim()).all(|a| p[a].abs() <= radius + 1e-12 * grid.h());
                        if inside {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    KernelShape::Gaussian { width } => {
                        let r2 = p[0] * p[0] + p[1] * p[1];
                        (-r2 / (2.0 * width * width)).exp()
                    }
                }
            })
            .collect();
        if let KernelShape::Box { radius } = shape {
            if !(radius > 0.0) {
                return Err(param("box radius must be positive"));
            }
        }
        if let KernelShape::Gaussian { width } = shape {
            if !(width > 0.0) {
                return Err(param("Gaussian width must be positive"));
            }
        }
        Self::from_samples(grid, samples, delta0, eta)
    }

    /// Normalizes arbitrary nonnegative samples and checks the floor.
    pub fn from_samples(grid: Grid, mut samples: Vec<f64>, delta0: f64, eta: f64) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Data("kernel samples do not match the grid".into()));
        }
        if !(delta0 > 0.0 && eta > 0.0) {
            return Err(param("delta0 and eta must be positive"));
        }
        if samples.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Data("kernel samples must be finite and nonnegative".into()));
        }
        let mass: f64 = samples.iter().sum::<f64>() * grid.cell_volume();
        if !(mass > 0.0) {
            return Err(Error::Data("kernel has zero mass".into()));
        }
        for v in samples.iter_mut() {
            *v /= mass;
        }
        let k = Kernel { grid, samples, delta0, eta };
        let floor = k.floor();
        if !(floor > eta) {
            return Err(param(format!(
                "kernel floor {floor} on B(0, {delta0}) does not exceed eta = {eta}"
            )));
        }
        Ok(k)
    }

    /// Unit point mass at the origin.
    pub fn delta(grid: Grid, eta: f64) -> Result<Self> {
        let mut s = vec![0.0; grid.len()];
        let c = grid.len() / 2;
        s[c] = 1.0;
        Self::from_samples(grid, s, 0.25 * grid.h(), eta)
    }

    /// Minimum sample over the nodes of B(0, delta0).
    pub fn floor(&self) -> f64 {
        let g = &self.grid;
        (0..g.len())
            .filter(|&i| {
                let p = g.point(i);
                (0..g.dim()).all(|a| p[a].abs() <= self.delta0 + 1e-12 * g.h())
            })
            .map(|i| self.samples[i])
            .fold(f64::INFINITY, f64::min)
    }

    pub fn mass(&self) -> f64 {
        self.samples.iter().sum::<f64>() * self.grid.cell_volume()
    }

    /// J at integer node offset (dx, dy); zero beyond the sampled window.
    pub fn at_offset(&self, dx: i64, dy: i64) -> f64 {
        let n = self.grid.n() as i64;
        let c = (n - 1) / 2;
        let (ix, iy) = (dx + c, dy + c);
        if ix < 0 || ix >= n {
            return 0.0;
        }
        if self.grid.dim() == 1 {
            return if dy == 0 { self.samples[ix as usize] } else { 0.0 };
        }
        if iy < 0 || iy >= n {
            return 0.0;
        }
        self.samples[self.grid.flat(ix as usize, iy as usize)]
    }

    pub fn convolver(&self) -> ToeplitzConv {
        let hv = self.grid.cell_volume();
        ToeplitzConv::new(&self.grid, |dx, dy| self.at_offset(dx, dy) * hv)
    }
}

/// (J * u)(x_i) = sum_j J(x_i - x_j) u_j h^dim with u = 0 outside the grid.
pub fn convolve(u: &Field, kernel: &Kernel) -> Result<Field> {
    u.grid.same_as(&kernel.grid)?;
    Field::new(u.grid, kernel.convolver().apply(&u.values))
}

/// Direct O(N^2) evaluation of the same sum.
pub fn convolve_direct(u: &Field, kernel: &Kernel) -> Result<Field> {
    u.grid.same_as(&kernel.grid)?;
    let g = u.grid;
    let hv = g.cell_volume();
    let out = (0..g.len())
        .map(|i| {
            let (ix, iy) = g.split(i);
            let mut acc = 0.0;
            for j in 0..g.len() {
                let (jx, jy) = g.split(j);
                acc += kernel.at_offset(ix as i64 - jx as i64, iy as i64 - jy as i64) * u.values[j];
            }
            acc * hv
        })
        .collect();
    Field::new(g, out)
}

/// f(u) = mu u^2 (1 - k conv) - gamma u, pointwise.
pub fn reaction(u: &Field, conv: &Field, mu: f64, k: f64, gamma: f64) -> Result<Field> {
    u.grid.same_as(&conv.grid)?;
    let values = u
        .values
        .iter()
        .zip(&conv.values)
        .map(|(&u, &c)| mu * u * u * (1.0 - k * c) - gamma * u)
        .collect();
    Field::new(u.grid, values)
}
