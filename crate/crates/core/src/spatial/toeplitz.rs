//! FFT evaluation of out_i = sum_j k(i - j) u_j on 1D and 2D grids (zero padded,
//! so the result equals the direct linear sum).

use super::grid::Grid;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub struct ToeplitzConv {
    n: usize,
    dim: usize,
    m: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    spectrum: Vec<Complex<f64>>,
}

impl std::fmt::Debug for ToeplitzConv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToeplitzConv").field("n", &self.n).field("dim", &self.dim).field("m", &self.m).finish()
    }
}

impl ToeplitzConv {
    /// `kernel(dx, dy)` is queried for offsets |dx|, |dy| <= n - 1 (dy = 0 in 1D).
    pub fn new(grid: &Grid, kernel: impl Fn(i64, i64) -> f64) -> Self {
        let n = grid.n();
        let dim = grid.dim();
        let m = (2 * n - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(m);
        let inv = planner.plan_fft_inverse(m);
        let wrap = |d: i64| d.rem_euclid(m as i64) as usize;
        let r = n as i64 - 1;
        let mut buf = vec![Complex::new(0.0, 0.0); m.pow(dim as u32)];
        if dim == 1 {
            for d in -r..=r {
                buf[wrap(d)] = Complex::new(kernel(d, 0), 0.0);
            }
        } else {
            for dy in -r..=r {
                for dx in -r..=r {
                    buf[wrap(dy) * m + wrap(dx)] = Complex::new(kernel(dx, dy), 0.0);
                }
            }
        }
        let mut conv = ToeplitzConv { n, dim, m, fwd, inv, spectrum: Vec::new() };
        conv.transform(&mut buf, false);
        conv.spectrum = buf;
        conv
    }

    fn transform(&self, buf: &mut [Complex<f64>], inverse: bool) {
        let plan = if inverse { &self.inv } else { &self.fwd };
        let m = self.m;
        if self.dim == 1 {
            plan.process(buf);
            return;
        }
        for row in buf.chunks_mut(m) {
            plan.process(row);
        }
        let mut col = vec![Complex::new(0.0, 0.0); m];
        for x in 0..m {
            for y in 0..m {
                col[y] = buf[y * m + x];
            }
            plan.process(&mut col);
            for y in 0..m {
                buf[y * m + x] = col[y];
            }
        }
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let (n, m) = (self.n, self.m);
        let mut buf = vec![Complex::new(0.0, 0.0); m.pow(self.dim as u32)];
        if self.dim == 1 {
            for i in 0..n {
                buf[i] = Complex::new(u[i], 0.0);
            }
        } else {
            for iy in 0..n {
                for ix in 0..n {
                    buf[iy * m + ix] = Complex::new(u[iy * n + ix], 0.0);
                }
            }
        }
        self.transform(&mut buf, false);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.transform(&mut buf, true);
        let scale = 1.0 / (buf.len() as f64);
        if self.dim == 1 {
            (0..n).map(|i| buf[i].re * scale).collect()
        } else {
            let mut out = vec![0.0; n * n];
            for iy in 0..n {
                for ix in 0..n {
                    out[iy * n + ix] = buf[iy * m + ix].re * scale;
                }
            }
            out
        }
    }
}
