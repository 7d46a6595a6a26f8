//! Mittag-Leffler functions E_{alpha,beta}(z) for real z and 0 < alpha <= 1.
//!
//! Branches:
//! - power series when the largest term stays small enough that cancellation is harmless;
//! - the large-argument asymptotic expansion once its first omitted term is below tolerance;
//! - otherwise, for negative z, the real-line integral representation
//!   E(z) = int_0^inf K(chi) dchi (Gorenflo, Loutchko, Luchko 2002) evaluated adaptively.

use super::gamma::{cos_pi, ln_gamma, rgamma, sin_pi};
use crate::error::{param, Error, Result};
use crate::quad::integrate_with_breaks;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
    pub series_tol: f64,
    pub max_terms: usize,
    pub asymptotic_switch: f64,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = MlParams {
            alpha,
            beta,
            series_tol: 1e-16,
            max_terms: 5000,
            asymptotic_switch: 20.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(param(format!("order alpha = {} outside (0, 1]", self.alpha)));
        }
        if !(self.beta > 0.0) {
            return Err(param(format!("beta = {} must be positive", self.beta)));
        }
        if !(self.series_tol > 0.0) {
            return Err(param("series_tol must be positive"));
        }
        if self.max_terms < 50 {
            return Err(param("max_terms must be at least 50"));
        }
        if !(self.asymptotic_switch > 0.0) {
            return Err(param("asymptotic_switch must be positive"));
        }
        Ok(())
    }
}

const ASYMPTOTIC_TERMS: usize = 10;
/// Largest series term magnitude tolerated for alternating sums.
const CANCELLATION_LIMIT: f64 = 200.0;
const ABS_TOL: f64 = 1e-14;
/// exp(x) overflows just above 709.
const EXP_GUARD: f64 = 700.0;

pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    mittag_leffler2(alpha, 1.0, z)
}

pub fn mittag_leffler2(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    ml_with(&MlParams::new(alpha, beta)?, z)
}

pub fn ml_with(p: &MlParams, z: f64) -> Result<f64> {
    p.validate()?;
    if z.is_nan() {
        return Err(Error::Data("NaN argument".into()));
    }
    if z == 0.0 {
        return Ok(rgamma(p.beta));
    }
    if p.alpha == 1.0 {
        return ml_order_one(p, z);
    }
    if z > 0.0 {
        if z.powf(1.0 / p.alpha) > EXP_GUARD {
            return Err(Error::Domain(format!(
                "E_({},{})({z}) overflows double precision",
                p.alpha, p.beta
            )));
        }
        if z.powf(1.0 / p.alpha) > 40.0 {
            return Ok(ml_asymptotic_positive(p, z));
        }
        return ml_series(p, z);
    }
    let x = -z;
    if series_peak(p, z) <= CANCELLATION_LIMIT {
        return ml_series(p, z);
    }
    if x >= p.asymptotic_switch {
        let (v, rem) = ml_asymptotic(p, z, ASYMPTOTIC_TERMS);
        if rem <= ABS_TOL {
            return Ok(v);
        }
    }
    ml_integral(p.alpha, p.beta, z)
}

/// Magnitude of the largest term of the power series at z.
fn series_peak(p: &MlParams, z: f64) -> f64 {
    let lz = z.abs().ln();
    let mut best = f64::NEG_INFINITY;
    let mut prev = f64::NEG_INFINITY;
    for k in 0..p.max_terms {
        let kf = k as f64;
        let lt = kf * lz - ln_gamma(p.alpha * kf + p.beta);
        best = best.max(lt);
        if k > 2 && lt < prev && lt < best - 40.0 {
            break;
        }
        prev = lt;
    }
    best.exp()
}

fn series_term(p: &MlParams, z: f64, k: usize) -> f64 {
    let arg = p.alpha * k as f64 + p.beta;
    let zk = z.powi(k as i32);
    if arg < 170.0 && zk.is_finite() && zk.abs() > 1e-300 {
        zk * rgamma(arg)
    } else {
        let mag = (k as f64 * z.abs().ln() - ln_gamma(arg)).exp();
        if z < 0.0 && k % 2 == 1 {
            -mag
        } else {
            mag
        }
    }
}

/// Power series with compensated summation. Stops once a term falls below
/// `series_tol` relative to max(1, |sum|) past the peak.
pub fn ml_series(p: &MlParams, z: f64) -> Result<f64> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut peak = 0.0f64;
    let mut last = f64::INFINITY;
    for k in 0..p.max_terms {
        let t = series_term(p, z, k);
        peak = peak.max(t.abs());
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        let small = t.abs() <= p.series_tol * sum.abs().max(1.0);
        if small && t.abs() <= last && k > 2 {
            return Ok(sum);
        }
        last = t.abs();
    }
    Err(Error::Accuracy { partial: sum, bound: last.max(peak * f64::EPSILON) })
}

/// Asymptotic expansion for z < 0: -sum_{k=1..terms} z^{-k}/Gamma(beta - alpha k).
/// Returns the value and the magnitude of the first omitted term.
pub fn ml_asymptotic(p: &MlParams, z: f64, terms: usize) -> (f64, f64) {
    let mut sum = 0.0;
    for k in 1..=terms {
        sum -= z.powi(-(k as i32)) * rgamma(p.beta - p.alpha * k as f64);
    }
    let k = terms + 1;
    let mut rem = (z.powi(-(k as i32)) * rgamma(p.beta - p.alpha * k as f64)).abs();
    if rem == 0.0 {
        // The omitted coefficient sits on a pole of Gamma; use the next one.
        rem = (z.powi(-(k as i32 + 1)) * rgamma(p.beta - p.alpha * (k + 1) as f64)).abs();
    }
    if z < 0.0 && p.alpha > 2.0 / 3.0 {
        // Above 2/3 the saddles at |z|^{1/alpha} e^{+-i pi/alpha} add an exponentially
        // small oscillating part that the algebraic series does not see.
        let x = -z;
        let xr = x.powf(1.0 / p.alpha);
        rem += 2.0 / p.alpha * x.powf((1.0 - p.beta) / p.alpha) * (xr * cos_pi(1.0 / p.alpha)).exp();
    }
    (sum, rem)
}

fn ml_asymptotic_positive(p: &MlParams, z: f64) -> f64 {
    let lead = z.powf((1.0 - p.beta) / p.alpha) * z.powf(1.0 / p.alpha).exp() / p.alpha;
    let (tail, _) = ml_asymptotic(p, z, ASYMPTOTIC_TERMS);
    lead + tail
}

/// Integral representation for z < 0. For beta close to or above 1 + alpha the
/// recurrence E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z lowers beta first.
pub fn ml_integral(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(z < 0.0) || !(alpha > 0.0 && alpha < 1.0) {
        return Err(param("integral representation needs z < 0 and 0 < alpha < 1"));
    }
    if beta > 1.0 + 0.5 * alpha {
        let lower = ml_integral(alpha, beta - alpha, z)?;
        return Ok((lower - rgamma(beta - alpha)) / z);
    }
    let c = 1.0 + alpha - beta;
    let x = -z;
    let s1 = sin_pi(1.0 - beta);
    let s2 = sin_pi(1.0 - beta + alpha);
    let ca = cos_pi(alpha);
    let r_max: f64 = 46.0;
    let w_max = r_max.powf(c);
    let norm = 1.0 / (std::f64::consts::PI * c);
    let f = |w: f64| {
        if w <= 0.0 {
            return 0.0;
        }
        let r = w.powf(1.0 / c);
        let chi = r.powf(alpha);
        let num = chi * s1 + x * s2;
        let den = chi * chi + 2.0 * chi * x * ca + x * x;
        norm * (-r).exp() * num / den
    };
    let to_w = |chi: f64| chi.powf(1.0 / alpha).powf(c);
    let mut breaks = vec![to_w(x)];
    if ca < 0.0 {
        let chi_star = -x * ca;
        let width = x * sin_pi(alpha).abs();
        breaks.push(to_w(chi_star));
        breaks.push(to_w((chi_star - width).max(0.0)));
        breaks.push(to_w(chi_star + width));
    }
    let res = integrate_with_breaks(f, 0.0, w_max, &breaks, 1e-16, 1e-15, 20_000);
    if !(res.error <= 1e-12) {
        return Err(Error::Accuracy { partial: res.value, bound: res.error });
    }
    Ok(res.value)
}

/// alpha = 1: E_{1,1} = exp and E_{1,2} = expm1(z)/z exactly; other beta use the
/// series for z > 0 and the Kummer-transformed positive series for z < 0.
fn ml_order_one(p: &MlParams, z: f64) -> Result<f64> {
    if p.beta == 1.0 {
        return Ok(z.exp());
    }
    if p.beta == 2.0 {
        return Ok(z.exp_m1() / z);
    }
    if z > 0.0 {
        if z > EXP_GUARD {
            return Err(Error::Domain(format!("E_(1,{})({z}) overflows", p.beta)));
        }
        return ml_series(p, z);
    }
    // E_{1,b}(-x) = e^{-x}/Gamma(b) * (1 + (b-1) sum_{k>=1} x^k / (k! (b-1+k))).
    let x = -z;
    let bm1 = p.beta - 1.0;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..p.max_terms {
        term *= x / k as f64;
        let t = term / (bm1 + k as f64);
        sum += t;
        if t <= p.series_tol * sum.abs() && k as f64 > x {
            return Ok((-x).exp() * rgamma(p.beta) * (1.0 + bm1 * sum));
        }
    }
    Err(Error::Accuracy { partial: sum, bound: term })
}

/// Saturating exp(w^{1/alpha} t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub value: f64,
    pub saturated: bool,
}

pub fn ml_exponential_envelope(alpha: f64, w: f64, t: f64) -> Result<Envelope> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(param(format!("order alpha = {alpha} outside (0, 1)")));
    }
    if !(w > 0.0) || !(t >= 0.0) {
        return Err(param("envelope needs w > 0 and t >= 0"));
    }
    let e = w.powf(1.0 / alpha) * t;
    if e > 709.0 {
        return Ok(Envelope { value: f64::MAX, saturated: true });
    }
    Ok(Envelope { value: e.exp(), saturated: false })
}

/// Smallest C with E_alpha(w t^alpha) <= C exp(w^{1/alpha} t) on the grid.
pub fn envelope_constant(alpha: f64, w: f64, t_grid: &[f64]) -> Result<f64> {
    let mut c: f64 = 0.0;
    for &t in t_grid {
        let env = ml_exponential_envelope(alpha, w, t)?;
        if env.saturated {
            continue;
        }
        let e = mittag_leffler(alpha, w * t.powf(alpha))?;
        c = c.max(e / env.value);
    }
    Ok(c)
}
