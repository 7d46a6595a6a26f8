use crate::error::{param, Error, Result};

/// Uniform node-centred grid on [-L, L]^dim (dim 1 or 2). Node i owns the cell of
/// width h around it, so the computational box is [-L - h/2, L + h/2]^dim and the
/// zero extension starts at its boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    n: usize,
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, n: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(param(format!("dimension {dim} unsupported (1 or 2)")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(param("half width must be positive"));
        }
        if n < 9 || n % 2 == 0 {
            return Err(param(format!("points per axis must be odd and >= 9, got {n}")));
        }
        Ok(Grid { dim, half_width, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn h(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// h^dim.
    pub fn cell_volume(&self) -> f64 {
        self.h().powi(self.dim as i32)
    }
    /// Half width of the box covered by the node cells, L + h/2.
    pub fn box_half_width(&self) -> f64 {
        self.half_width + 0.5 * self.h()
    }
    /// Coordinate of axis index i.
    pub fn axis(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h()
    }
    /// (ix, iy) of a flat index; x runs fastest.
    pub fn split(&self, idx: usize) -> (usize, usize) {
        if self.dim == 1 {
            (idx, 0)
        } else {
            (idx % self.n, idx / self.n)
        }
    }
    pub fn flat(&self, ix: usize, iy: usize) -> usize {
        if self.dim == 1 {
            ix
        } else {
            iy * self.n + ix
        }
    }
    /// Node coordinates; the second entry is 0 in 1D.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        let (ix, iy) = self.split(idx);
        if self.dim == 1 {
            [self.axis(ix), 0.0]
        } else {
            [self.axis(ix), self.axis(iy)]
        }
    }
    pub fn same_as(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Data(format!("grid mismatch: {self:?} vs {other:?}")))
        }
    }
}

/// Axis-aligned sub-box [center - delta, center + delta]^dim selecting the nodes inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Whole,
    Cube { center: [f64; 2], delta: f64 },
}

impl Region {
    pub fn cube(center: [f64; 2], delta: f64) -> Self {
        Region::Cube { center, delta }
    }

    pub fn contains(&self, grid: &Grid, p: [f64; 2]) -> bool {
        match *self {
            Region::Whole => true,
            Region::Cube { center, delta } => {
                let tol = 1e-9 * grid.h();
                (0..grid.dim()).all(|a| (p[a] - center[a]).abs() <= delta + tol)
            }
        }
    }

    pub fn nodes(&self, grid: &Grid) -> Vec<usize> {
        (0..grid.len()).filter(|&i| self.contains(grid, grid.point(i))).collect()
    }

    /// Fails when the cube reaches outside the node-cell box.
    pub fn check_inside(&self, grid: &Grid) -> Result<()> {
        if let Region::Cube { center, delta } = *self {
            if !(delta > 0.0) {
                return Err(param("region half width must be positive"));
            }
            let b = grid.box_half_width() * (1.0 + 1e-12);
            for a in 0..grid.dim() {
                if center[a] - delta < -b || center[a] + delta > b {
                    return Err(Error::Domain(format!(
                        "cube around {center:?} with half width {delta} leaves the grid box"
                    )));
                }
            }
        }
        Ok(())
    }
}
