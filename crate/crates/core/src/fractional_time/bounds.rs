use super::l1::rl_integral_grid;
use crate::error::{param, Result};
use crate::special::{gamma, mittag_leffler2};
use std::fmt::Write as _;

/// Sampled upper envelope tagged with the formula that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub formula_id: String,
    pub formula: String,
}

impl BoundCurve {
    pub fn new(times: Vec<f64>, values: Vec<f64>, id: &str, formula: &str) -> Self {
        BoundCurve { times, values, formula_id: id.to_string(), formula: formula.to_string() }
    }

    /// CSV with columns `t,value,formula_id`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,value,formula_id\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            let _ = writeln!(s, "{t:?},{v:?},{}", self.formula_id);
        }
        s
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(param("empty time grid"));
    }
    if t_grid[0] != 0.0 {
        return Err(param("time grid must start at 0"));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(param("time grid must be strictly increasing"));
    }
    Ok(())
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(param(format!("order alpha = {alpha} outside (0, 1]")))
    }
}

/// u(0) + (1/Gamma(alpha)) int_0^t (t-s)^{alpha-1} f(s) ds, the envelope for
/// D^alpha u + c1 u <= f with f >= 0.
pub fn bound_gronwall(
    alpha: f64,
    c1: f64,
    u0: f64,
    f: &dyn Fn(f64) -> f64,
    t_grid: &[f64],
) -> Result<BoundCurve> {
    check_order(alpha)?;
    check_grid(t_grid)?;
    if !(c1 > 0.0) {
        return Err(param("c1 must be positive"));
    }
    let fs: Vec<f64> = t_grid.iter().map(|&t| f(t)).collect();
    if let Some(i) = fs.iter().position(|&v| !(v >= 0.0)) {
        return Err(param(format!("forcing must be nonnegative; f({}) = {}", t_grid[i], fs[i])));
    }
    let values = (0..t_grid.len())
        .map(|n| u0 + if n == 0 { 0.0 } else { rl_integral_grid(alpha, t_grid, &fs, n) })
        .collect();
    Ok(BoundCurve::new(
        t_grid.to_vec(),
        values,
        "gronwall",
        "u(0) + 1/Gamma(alpha) int_0^t (t-s)^(alpha-1) f(s) ds",
    ))
}

/// Antiderivatives of the kernel r^{alpha-1} E_{alpha,alpha}(lambda r^alpha):
/// p0(s) = int_0^s kernel dr = s^alpha E_{alpha,alpha+1}(lambda s^alpha),
/// p1(s) = int_0^s r kernel dr = s^{alpha+1} [E_{alpha,alpha+1} - E_{alpha,alpha+2}](lambda s^alpha).
#[derive(Debug, Clone, Copy)]
pub struct MlKernel {
    pub alpha: f64,
    pub lambda: f64,
}

impl MlKernel {
    pub fn p0(&self, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Ok(0.0);
        }
        let sa = s.powf(self.alpha);
        Ok(sa * mittag_leffler2(self.alpha, self.alpha + 1.0, self.lambda * sa)?)
    }

    pub fn p1(&self, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Ok(0.0);
        }
        let sa = s.powf(self.alpha);
        let z = self.lambda * sa;
        let e1 = mittag_leffler2(self.alpha, self.alpha + 1.0, z)?;
        let e2 = mittag_leffler2(self.alpha, self.alpha + 2.0, z)?;
        Ok(s * sa * (e1 - e2))
    }

    /// Weights (on g(a), on g(b)) of int_a^b kernel(t - s) g(s) ds for linear g.
    pub fn interval_weights(&self, a: f64, b: f64, t: f64) -> Result<(f64, f64)> {
        let sa = t - a;
        let sb = (t - b).max(0.0);
        let i0 = self.p0(sa)? - self.p0(sb)?;
        let i1 = sa * i0 - (self.p1(sa)? - self.p1(sb)?);
        let wb = i1 / (b - a);
        Ok((i0 - wb, wb))
    }

    /// int_0^{t_n} kernel(t_n - s) g(s) ds for piecewise-linear g on `times`.
    pub fn convolve(&self, times: &[f64], g: &[f64], n: usize) -> Result<f64> {
        let mut acc = 0.0;
        for i in 0..n {
            let (wa, wb) = self.interval_weights(times[i], times[i + 1], times[n])?;
            acc += wa * g[i] + wb * g[i + 1];
        }
        Ok(acc)
    }
}

/// Envelope y0 + lambda y0 int K + eps^{1/beta} int K b^{1/beta}, with
/// K(r) = r^{alpha-1} E_{alpha,alpha}(lambda r^alpha) and
/// lambda = -a_tilde + (1 - beta) / (beta eps^{1/(1-beta)}).
#[allow(clippy::too_many_arguments)]
pub fn bound_lemma_7700(
    alpha: f64,
    a_tilde: f64,
    beta: f64,
    eps: f64,
    y0: f64,
    b: &dyn Fn(f64) -> f64,
    t_grid: &[f64],
) -> Result<BoundCurve> {
    check_order(alpha)?;
    check_grid(t_grid)?;
    if !(a_tilde > 0.0 && eps > 0.0) {
        return Err(param("a_tilde and eps must be positive"));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(param("beta must lie in (0, 1)"));
    }
    let lambda = -a_tilde + (1.0 - beta) / (beta * eps.powf(1.0 / (1.0 - beta)));
    let kernel = MlKernel { alpha, lambda };
    let bb: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let v = b(t);
            if v < 0.0 {
                Err(param(format!("b({t}) = {v} is negative")))
            } else {
                Ok(v.powf(1.0 / beta))
            }
        })
        .collect::<Result<_>>()?;
    let e = eps.powf(1.0 / beta);
    let mut values = Vec::with_capacity(t_grid.len());
    for n in 0..t_grid.len() {
        let first = lambda * y0 * kernel.p0(t_grid[n])?;
        let second = e * kernel.convolve(t_grid, &bb, n)?;
        values.push(y0 + first + second);
    }
    Ok(BoundCurve::new(
        t_grid.to_vec(),
        values,
        "lemma_7700",
        "y0 + lambda*y0*int K + eps^(1/beta) int K b^(1/beta), lambda = -a~ + (1-beta)/(beta eps^(1/(1-beta)))",
    ))
}

/// Three-term bound for D^alpha y + a y^k + beta y <= b(t) y^m + c4 with 0 < k < m < 1.
///
/// The order `alpha` and the coefficient `a_coef` of y^k are kept separate; the
/// bound is evaluated at time t <= T using b(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma4554 {
    pub alpha: f64,
    pub k_exp: f64,
    pub m_exp: f64,
    pub a_coef: f64,
    pub beta_coef: f64,
    pub c4: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma4554Terms {
    pub lambda_k: f64,
    pub initial: f64,
    /// [lambda_k y0^{1-k} + (c4 - a)(1-k)] T^alpha / (alpha Gamma(alpha)) before the power.
    pub bracket: f64,
    /// bracket^{1/(1-k)}; NaN when the bracket is negative.
    pub middle: f64,
    pub forcing: f64,
    pub total: f64,
}

impl Lemma4554 {
    pub fn validate(&self) -> Result<()> {
        check_order(self.alpha)?;
        if !(0.0 < self.k_exp && self.k_exp < self.m_exp && self.m_exp < 1.0) {
            return Err(param(format!(
                "exponents must satisfy 0 < k < m < 1 (k = {}, m = {})",
                self.k_exp, self.m_exp
            )));
        }
        if !(self.a_coef > 0.0 && self.beta_coef > 0.0 && self.c4 > 0.0 && self.eps > 0.0) {
            return Err(param("a, beta, c4 and eps must be positive"));
        }
        Ok(())
    }

    pub fn lambda_k(&self) -> f64 {
        let (k, m) = (self.k_exp, self.m_exp);
        -(m - k) / self.eps.powf((1.0 - k) / (m - k)) - self.beta_coef * (1.0 - k)
    }

    pub fn terms(&self, y0: f64, b_t: f64, horizon: f64) -> Result<Lemma4554Terms> {
        self.validate()?;
        if !(horizon >= 0.0) || !(b_t >= 0.0) || !(y0 >= 0.0) {
            return Err(param("horizon, b(t) and y0 must be nonnegative"));
        }
        let (k, m, al) = (self.k_exp, self.m_exp, self.alpha);
        let lam = self.lambda_k();
        let ag = al * gamma(al);
        let bracket = (lam * y0.powf(1.0 - k) + (self.c4 - self.a_coef) * (1.0 - k)) * horizon.powf(al) / ag;
        let middle = if bracket == 0.0 { 0.0 } else { bracket.powf(1.0 / (1.0 - k)) };
        let forcing = (1.0 - m).powf(1.0 / (1.0 - k))
            * self.eps.powf(1.0 / (1.0 - m))
            * horizon.powf(al / (1.0 - k))
            / ag.powf(1.0 / (1.0 - k))
            * b_t.powf(1.0 / (1.0 - m));
        Ok(Lemma4554Terms {
            lambda_k: lam,
            initial: y0,
            bracket,
            middle,
            forcing,
            total: y0 + middle + forcing,
        })
    }
}

/// Evaluates the bound at time t using b(t); see [`Lemma4554`].
#[allow(clippy::too_many_arguments)]
pub fn bound_lemma_4554(
    alpha: f64,
    k_exp: f64,
    m_exp: f64,
    a_coef: f64,
    beta_coef: f64,
    c4: f64,
    eps: f64,
    y0: f64,
    b_fun: &dyn Fn(f64) -> f64,
    t: f64,
    horizon: f64,
) -> Result<f64> {
    let l = Lemma4554 { alpha, k_exp, m_exp, a_coef, beta_coef, c4, eps };
    Ok(l.terms(y0, b_fun(t), horizon)?.total)
}

/// Natural log of (2a)^{(3^k-1)/2} 3^{r(3^{k+1}/4 - k/2 - 3/4)} max{sup y0^{3^k}, K^{3^k}} T^alpha/(alpha Gamma(alpha)).
pub fn ln_bound_moser_recursion(
    alpha: f64,
    a_bar: f64,
    r: f64,
    k_const: f64,
    y0_sup: f64,
    horizon: f64,
    k_index: u32,
) -> Result<f64> {
    check_order(alpha)?;
    if !(a_bar > 1.0) {
        return Err(param("a_bar must exceed 1"));
    }
    if !(r > 0.0) {
        return Err(param("r must be positive"));
    }
    if !(k_const >= 1.0) {
        return Err(param("K must be at least 1"));
    }
    if !(horizon > 0.0) || !(y0_sup >= 0.0) {
        return Err(param("horizon must be positive and sup y0 nonnegative"));
    }
    let kf = k_index as f64;
    let p3 = 3f64.powf(kf);
    let ln_a = (p3 - 1.0) / 2.0 * (2.0 * a_bar).ln();
    let ln_r = r * (3.0 * p3 / 4.0 - kf / 2.0 - 0.75) * 3f64.ln();
    let ln_max = p3 * y0_sup.max(k_const).ln();
    let ln_t = alpha * horizon.ln() - (alpha * gamma(alpha)).ln();
    Ok(ln_a + ln_r + ln_max + ln_t)
}

#[allow(clippy::too_many_arguments)]
pub fn bound_moser_recursion(
    alpha: f64,
    a_bar: f64,
    r: f64,
    k_const: f64,
    y0_sup: f64,
    horizon: f64,
    k_index: u32,
) -> Result<f64> {
    Ok(ln_bound_moser_recursion(alpha, a_bar, r, k_const, y0_sup, horizon, k_index)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gronwall_constant_forcing() {
        let t: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
        let c = bound_gronwall(0.6, 1.0, 0.3, &|_| 2.0, &t).unwrap();
        for (ti, v) in t.iter().zip(&c.values) {
            let exact = 0.3 + 2.0 * ti.powf(0.6) / (0.6 * gamma(0.6));
            assert!((v - exact).abs() < 1e-13);
        }
        let c = bound_gronwall(1.0, 1.0, 0.5, &|_| 1.0, &t).unwrap();
        for (ti, v) in t.iter().zip(&c.values) {
            assert!((v - (0.5 + ti)).abs() < 1e-14);
        }
        assert!(bound_gronwall(0.5, 1.0, 0.0, &|_| -1.0, &t).is_err());
    }

    #[test]
    fn moser_k0() {
        let ln = ln_bound_moser_recursion(0.5, 2.0, 1.0, 3.0, 2.0, 2.0, 0).unwrap();
        let direct = 3.0 * 2f64.powf(0.5) / (0.5 * gamma(0.5));
        assert!((ln.exp() - direct).abs() < 1e-13);
    }

    #[test]
    fn csv_layout() {
        let c = BoundCurve::new(vec![0.0, 0.5], vec![1.0, 2.0], "x", "f");
        assert_eq!(c.to_csv(), "t,value,formula_id\n0.0,1.0,x\n0.5,2.0,x\n");
    }
}
