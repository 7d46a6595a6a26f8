use crate::error::{param, Error, Result};
use crate::spatial::{Field, Grid, Region};

/// Nonzero constant states 0 < a < A of mu u^2 (1 - k u) - gamma u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyRoots {
    pub a: f64,
    pub big_a: f64,
    pub mu: f64,
    pub k: f64,
    pub gamma: f64,
}

impl SteadyRoots {
    /// mu u^2 (1 - k u) - gamma u.
    pub fn f(&self, u: f64) -> f64 {
        self.mu * u * u * (1.0 - self.k * u) - self.gamma * u
    }

    /// h(u) = A ln(1 - u/A) - a ln(1 - u/a), defined for u < a.
    pub fn h(&self, u: f64) -> f64 {
        self.big_a * (-u / self.big_a).ln_1p() - self.a * (-u / self.a).ln_1p()
    }

    /// (A - a) u / ((A - u)(a - u)).
    pub fn h_prime(&self, u: f64) -> f64 {
        (self.big_a - self.a) * u / ((self.big_a - u) * (self.a - u))
    }

    pub fn h_second(&self, u: f64) -> f64 {
        self.a / (self.a - u).powi(2) - self.big_a / (self.big_a - u).powi(2)
    }

    /// (A - a)^2 / (A^2 a), the lower bound on h'' over (0, a).
    pub fn h_second_floor(&self) -> f64 {
        (self.big_a - self.a).powi(2) / (self.big_a * self.big_a * self.a)
    }
}

/// a = (1 - sqrt(1 - 4 k gamma / mu)) / (2k) and A = (1 + sqrt(...)) / (2k), for
/// 1 <= gamma < mu / (4k).
pub fn steady_roots(mu: f64, k: f64, gamma: f64) -> Result<SteadyRoots> {
    if !(mu > 0.0 && k > 0.0) {
        return Err(param("mu and k must be positive"));
    }
    if !(gamma >= 1.0) {
        return Err(Error::Regime(format!("steady states need gamma >= 1, got {gamma}")));
    }
    let disc = 1.0 - 4.0 * k * gamma / mu;
    if !(disc > 0.0) {
        return Err(Error::Regime(format!(
            "steady states need gamma < mu / (4k) = {}, got gamma = {gamma}",
            mu / (4.0 * k)
        )));
    }
    let sq = disc.sqrt();
    let big_a = (1.0 + sq) / (2.0 * k);
    // Vieta form of the small root avoids cancellation when 4k gamma / mu is small.
    let a = 2.0 * gamma / (mu * (1.0 + sq));
    let r = SteadyRoots { a, big_a, mu, k, gamma };
    // 1e-12 absolute, relaxed to the rounding level of the largest term mu u^2
    for u in [a, big_a] {
        let scale = (mu * u * u).max(gamma * u).max(1.0);
        if r.f(u).abs() > 1e-12 * scale {
            return Err(Error::Numeric(format!("root check failed: F({u}) = {:e}", r.f(u))));
        }
    }
    Ok(r)
}

/// Node weights for the integral over the cube: each node's cell volume clipped to it.
pub(crate) fn cube_weights(grid: &Grid, center: [f64; 2], delta: f64) -> Result<Vec<(usize, f64)>> {
    Region::cube(center, delta).check_inside(grid)?;
    let h = grid.h();
    let overlap = |x: f64, c: f64| {
        let lo = (x - 0.5 * h).max(c - delta);
        let hi = (x + 0.5 * h).min(c + delta);
        (hi - lo).max(0.0)
    };
    Ok((0..grid.len())
        .filter_map(|i| {
            let p = grid.point(i);
            let mut w = overlap(p[0], center[0]);
            if grid.dim() == 2 {
                w *= overlap(p[1], center[1]);
            }
            (w > 0.0).then_some((i, w))
        })
        .collect())
}

fn power(v: f64, q: f64) -> f64 {
    if q == q.round() && q.abs() < 64.0 {
        v.powi(q as i32)
    } else {
        v.abs().powf(q)
    }
}

/// int_{B(center, delta)} u^power dy over the cube |y_i - center_i| <= delta.
pub fn local_mass(u: &Field, center: [f64; 2], delta: f64, power_exp: f64) -> Result<f64> {
    let w = cube_weights(&u.grid, center, delta)?;
    Ok(w.iter().map(|&(i, wi)| power(u.values[i], power_exp) * wi).sum())
}

/// (H, D) on the cube: H = int h(u), D = (A - a) mu k / 2 int u^2.
pub fn lyapunov(u: &Field, roots: &SteadyRoots, center: [f64; 2], delta: f64) -> Result<(f64, f64)> {
    let w = cube_weights(&u.grid, center, delta)?;
    let mut h = 0.0;
    let mut m2 = 0.0;
    for &(i, wi) in &w {
        let v = u.values[i];
        if !(v < roots.a) {
            return Err(Error::Domain(format!("u = {v} reaches the lower root a = {} in the cube", roots.a)));
        }
        h += roots.h(v) * wi;
        m2 += v * v * wi;
    }
    Ok((h, 0.5 * (roots.big_a - roots.a) * roots.mu * roots.k * m2))
}
