use crate::error::{param, Error, Result};
use crate::special::gamma;

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(param(format!("order alpha = {alpha} outside (0, 1)")))
    }
}

/// b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..n-1.
pub fn l1_weights(alpha: f64, n: usize) -> Result<Vec<f64>> {
    check_order(alpha)?;
    if n == 0 {
        return Err(param("need at least one weight"));
    }
    let e = 1.0 - alpha;
    Ok((0..n)
        .map(|j| {
            let j = j as f64;
            (j + 1.0).powf(e) - j.powf(e)
        })
        .collect())
}

/// dt^{-alpha} / Gamma(2 - alpha), the prefactor of the L1 sum.
pub fn l1_scale(alpha: f64, dt: f64) -> f64 {
    dt.powf(-alpha) / gamma(2.0 - alpha)
}

/// Uniform-step sample record u(t_0), ..., u(t_n) feeding the L1 memory sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoHistory {
    alpha: f64,
    dt: f64,
    samples: Vec<f64>,
    weights: Vec<f64>,
}

impl CaputoHistory {
    pub fn new(alpha: f64, dt: f64, u0: f64) -> Result<Self> {
        Self::from_samples(alpha, dt, vec![u0])
    }

    pub fn from_samples(alpha: f64, dt: f64, samples: Vec<f64>) -> Result<Self> {
        check_order(alpha)?;
        if !(dt > 0.0) {
            return Err(param("dt must be positive"));
        }
        if samples.is_empty() {
            return Err(Error::State("history needs at least one sample".into()));
        }
        let weights = l1_weights(alpha, samples.len())?;
        Ok(CaputoHistory { alpha, dt, samples, weights })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
    pub fn len(&self) -> usize {
        self.samples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
    pub fn last(&self) -> f64 {
        *self.samples.last().expect("history is never empty")
    }

    pub fn push(&mut self, u: f64) {
        self.samples.push(u);
        let j = self.weights.len() as f64;
        let e = 1.0 - self.alpha;
        self.weights.push((j + 1.0).powf(e) - j.powf(e));
    }

    /// sum_{j=1}^{n} b_j (u_{n+1-j} - u_{n-j}): the memory part of the L1 sum for
    /// the next (not yet known) sample u_{n+1}.
    pub fn memory_for_next(&self) -> f64 {
        let u = &self.samples;
        let n = u.len() - 1;
        let mut acc = 0.0;
        for j in 1..=n {
            acc += self.weights[j] * (u[n + 1 - j] - u[n - j]);
        }
        acc
    }
}

/// L1 approximation of the Caputo derivative at the newest sample.
pub fn caputo_l1(history: &CaputoHistory) -> Result<f64> {
    let u = history.samples();
    if u.len() < 2 {
        return Err(Error::State("Caputo derivative needs at least two samples".into()));
    }
    let n = u.len() - 1;
    let b = &history.weights;
    let mut acc = 0.0;
    for j in 0..n {
        acc += b[j] * (u[n - j] - u[n - j - 1]);
    }
    Ok(l1_scale(history.alpha, history.dt) * acc)
}

/// L1 derivative at every sample; the value at t_0 is taken as 0.
pub fn caputo_l1_series(alpha: f64, dt: f64, u: &[f64]) -> Result<Vec<f64>> {
    if u.is_empty() {
        return Ok(Vec::new());
    }
    let b = l1_weights(alpha, u.len())?;
    let c = l1_scale(alpha, dt);
    let mut out = vec![0.0; u.len()];
    for n in 1..u.len() {
        let mut acc = 0.0;
        for j in 0..n {
            acc += b[j] * (u[n - j] - u[n - j - 1]);
        }
        out[n] = c * acc;
    }
    Ok(out)
}

/// Weights of int_a^b (t - s)^{alpha-1} g(s) ds for g linear on [a, b], split as
/// (weight on g(a), weight on g(b)). Requires t >= b.
pub(crate) fn linear_product_weights(alpha: f64, a: f64, b: f64, t: f64) -> (f64, f64) {
    let big = t - a;
    let small = (t - b).max(0.0);
    let h = b - a;
    let i0 = (big.powf(alpha) - small.powf(alpha)) / alpha;
    // int (t - s)^{alpha-1} (s - a) ds
    let i1 = big * i0 - (big.powf(alpha + 1.0) - small.powf(alpha + 1.0)) / (alpha + 1.0);
    let wb = i1 / h;
    (i0 - wb, wb)
}

/// (1/Gamma(alpha)) int_{t_0}^{t_n} (t_n - s)^{alpha-1} g(s) ds for piecewise-linear g
/// on an arbitrary increasing grid.
pub(crate) fn rl_integral_grid(alpha: f64, times: &[f64], values: &[f64], n: usize) -> f64 {
    let t = times[n];
    let mut acc = 0.0;
    for i in 0..n {
        let (wa, wb) = linear_product_weights(alpha, times[i], times[i + 1], t);
        acc += wa * values[i] + wb * values[i + 1];
    }
    acc / gamma(alpha)
}

/// Riemann-Liouville integral I^alpha u at the last of the uniformly spaced samples,
/// by product integration of the piecewise-linear interpolant.
pub fn rl_integral(alpha: f64, samples: &[f64], dt: f64) -> Result<f64> {
    check_order(alpha)?;
    if !(dt > 0.0) {
        return Err(param("dt must be positive"));
    }
    if samples.is_empty() {
        return Err(Error::State("no samples".into()));
    }
    let n = samples.len() - 1;
    let times: Vec<f64> = (0..=n).map(|i| i as f64 * dt).collect();
    Ok(rl_integral_grid(alpha, &times, samples, n))
}
