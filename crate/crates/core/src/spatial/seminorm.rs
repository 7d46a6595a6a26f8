use super::field::Field;
use super::grid::Region;
use super::operator::{FracPLaplacian, OperatorParams, SingularMode, TailMode};
use crate::error::Result;
use rayon::prelude::*;

fn operator_for(u: &Field, s: f64, p: f64) -> Result<FracPLaplacian> {
    let params = OperatorParams {
        s,
        p,
        tail_mode: if u.grid.dim() == 1 { TailMode::Analytic1d } else { TailMode::Numeric },
        singular_mode: SingularMode::SkipDiagonal,
    };
    FracPLaplacian::new(u.grid, params)
}

/// Double sum of |u_x - u_y|^p |x - y|^{-(N+sp)} h^{2N} over region x region, x != y.
pub fn gagliardo_seminorm(u: &Field, s: f64, p: f64, region: &Region) -> Result<f64> {
    region.check_inside(&u.grid)?;
    let op = operator_for(u, s, p)?;
    Ok(region_double_sum(&op, u, region))
}

fn region_double_sum(op: &FracPLaplacian, u: &Field, region: &Region) -> f64 {
    let g = u.grid;
    let p = op.params().p;
    let nodes = region.nodes(&g);
    let hv = g.cell_volume();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&i| {
            let (ix, iy) = g.split(i);
            let mut acc = 0.0;
            for &j in &nodes {
                if j != i {
                    let (jx, jy) = g.split(j);
                    acc += (u.values[i] - u.values[j]).abs().powf(p) * op.weight(ix.abs_diff(jx), iy.abs_diff(jy));
                }
            }
            acc
        })
        .collect();
    rows.iter().sum::<f64>() * hv
}

/// Seminorm over R^N of the zero extension: the grid double sum plus the
/// exterior pairs 2 sum_x |u_x|^p T(x) h^N.
pub fn gagliardo_seminorm_full(u: &Field, s: f64, p: f64) -> Result<f64> {
    let op = operator_for(u, s, p)?;
    Ok(seminorm_full_with(&op, u))
}

pub(crate) fn seminorm_full_with(op: &FracPLaplacian, u: &Field) -> f64 {
    let inner = region_double_sum(op, u, &Region::Whole);
    let p = op.params().p;
    let tail: f64 = u.values.iter().zip(op.tail()).map(|(v, t)| v.abs().powf(p) * t).sum();
    inner + 2.0 * tail * u.grid.cell_volume()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingReport {
    /// sum_{x in R} u_x (L_R u)_x h^N with the region-restricted operator.
    pub pairing: f64,
    pub half_seminorm: f64,
    pub residual: f64,
    /// residual / |half_seminorm| (0 when both vanish).
    pub relative: f64,
}

/// Compares the pairing of u with the region-restricted operator against half the
/// region seminorm; the two agree exactly up to rounding by kernel symmetry.
pub fn pairing_identity_residual(u: &Field, s: f64, p: f64, region: &Region) -> Result<PairingReport> {
    region.check_inside(&u.grid)?;
    let op = operator_for(u, s, p)?;
    let hv = u.grid.cell_volume();
    let applied = op.apply_restricted(&u.values, region);
    let pairing: f64 = applied.iter().map(|&(i, v)| u.values[i] * v).sum::<f64>() * hv;
    let half = 0.5 * region_double_sum(&op, u, region);
    let residual = (pairing - half).abs();
    let relative = if half == 0.0 { if residual == 0.0 { 0.0 } else { f64::INFINITY } } else { residual / half.abs() };
    Ok(PairingReport { pairing, half_seminorm: half, residual, relative })
}

/// sum_x u_x (L u)_x h^N, equal to half the full seminorm of the zero extension.
pub fn energy(op: &FracPLaplacian, u: &Field) -> f64 {
    let lu = op.apply_values(&u.values);
    u.values.iter().zip(&lu).map(|(a, b)| a * b).sum::<f64>() * u.grid.cell_volume()
}

