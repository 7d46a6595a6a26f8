use crate::error::{param, Result};
use crate::evolution::{Status, Trajectory};
use crate::special::mittag_leffler;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// C exp(-sigma^{1/alpha} t)
    Exponential,
    /// C E_alpha(-sigma t^alpha)
    MittagLeffler,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    pub kind: EnvelopeKind,
    pub sigma: f64,
    pub prefactor: f64,
    /// max |fit - data| / data over the fitted samples.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub exponential: Option<EnvelopeFit>,
    pub mittag_leffler: Option<EnvelopeFit>,
    /// The fit with the smaller residual.
    pub best: Option<EnvelopeFit>,
    /// Why no fit was attempted; None when fitted.
    pub rejected: Option<String>,
}

impl DecayFit {
    fn reject(why: impl Into<String>) -> Self {
        DecayFit { exponential: None, mittag_leffler: None, best: None, rejected: Some(why.into()) }
    }
}

const MAX_FIT_POINTS: usize = 200;

/// Fits the sup-norm series of a completed run; see [`decay_fit_series`].
pub fn decay_fit(traj: &Trajectory, alpha: f64) -> Result<DecayFit> {
    if traj.status != Status::Completed {
        return Ok(DecayFit::reject(format!("run ended with status {}", traj.status.label())));
    }
    decay_fit_series(&traj.times, &traj.sup_norm, alpha)
}

/// Least-squares fits of ln y on the second half of the time range against both
/// envelopes. Non-positive or non-decaying data is rejected, not an error.
pub fn decay_fit_series(times: &[f64], values: &[f64], alpha: f64) -> Result<DecayFit> {
    if times.len() != values.len() {
        return Err(param("times and values differ in length"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(param(format!("alpha = {alpha} outside (0, 1]")));
    }
    if times.len() < 4 {
        return Ok(DecayFit::reject("fewer than 4 samples"));
    }
    let t_end = *times.last().unwrap();
    let start = times.iter().position(|&t| t >= 0.5 * t_end).unwrap_or(0);
    let stride = ((times.len() - start) / MAX_FIT_POINTS).max(1);
    let idx: Vec<usize> = (start..times.len()).step_by(stride).collect();
    if idx.len() < 3 {
        return Ok(DecayFit::reject("fewer than 3 samples in the tail half"));
    }
    let t: Vec<f64> = idx.iter().map(|&i| times[i]).collect();
    let y: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    if y.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Ok(DecayFit::reject("non-positive or non-finite values in the tail"));
    }
    if !(y[y.len() - 1] < y[0]) {
        return Ok(DecayFit::reject("no decay over the tail half"));
    }
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();

    // ln y = ln C - rate t
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let lm = ly.iter().sum::<f64>() / n;
    let sxy: f64 = t.iter().zip(&ly).map(|(a, b)| (a - tm) * (b - lm)).sum();
    let sxx: f64 = t.iter().map(|a| (a - tm).powi(2)).sum();
    let rate = -sxy / sxx;
    if !(rate > 0.0) {
        return Ok(DecayFit::reject("fitted exponential rate is not positive"));
    }
    let c = (lm + rate * tm).exp();
    let exp_res = t.iter().zip(&y).map(|(&ti, &yi)| (c * (-rate * ti).exp() - yi).abs() / yi).fold(0.0, f64::max);
    let exponential = EnvelopeFit { kind: EnvelopeKind::Exponential, sigma: rate.powf(alpha), prefactor: c, residual: exp_res };

    let mittag_leffler = fit_ml(&t, &y, &ly, alpha)?;
    let best = match mittag_leffler {
        Some(m) if m.residual <= exponential.residual => m,
        _ => exponential,
    };
    Ok(DecayFit { exponential: Some(exponential), mittag_leffler, best: Some(best), rejected: None })
}

/// Profile least squares over ln sigma: for fixed sigma the best ln C is the mean
/// of ln y - ln E. Coarse scan, then golden section.
fn fit_ml(t: &[f64], y: &[f64], ly: &[f64], alpha: f64) -> Result<Option<EnvelopeFit>> {
    let n = t.len() as f64;
    let eval = |ls: f64| -> Result<(f64, f64)> {
        let sigma = ls.exp();
        let mut le = Vec::with_capacity(t.len());
        for &ti in t {
            let e = mittag_leffler(alpha, -sigma * ti.powf(alpha))?;
            if !(e > 0.0) {
                return Ok((f64::INFINITY, 0.0));
            }
            le.push(e.ln());
        }
        let lc = ly.iter().zip(&le).map(|(a, b)| a - b).sum::<f64>() / n;
        let sse = ly.iter().zip(&le).map(|(a, b)| (a - b - lc).powi(2)).sum();
        Ok((sse, lc))
    };
    let (lo, hi) = ((1e-4f64).ln(), (1e3f64).ln());
    let m = 60;
    let mut best = (f64::INFINITY, 0usize);
    for i in 0..=m {
        let ls = lo + (hi - lo) * i as f64 / m as f64;
        let (sse, _) = eval(ls)?;
        if sse < best.0 {
            best = (sse, i);
        }
    }
    if !best.0.is_finite() {
        return Ok(None);
    }
    let step = (hi - lo) / m as f64;
    let (mut a, mut b) = (lo + step * (best.1 as f64 - 1.0), lo + step * (best.1 as f64 + 1.0));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = eval(x1)?.0;
    let mut f2 = eval(x2)?.0;
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = eval(x1)?.0;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = eval(x2)?.0;
        }
        if b - a < 1e-10 {
            break;
        }
    }
    let ls = 0.5 * (a + b);
    let (_, lc) = eval(ls)?;
    let sigma = ls.exp();
    let c = lc.exp();
    let mut res: f64 = 0.0;
    for (&ti, &yi) in t.iter().zip(y) {
        let fit = c * mittag_leffler(alpha, -sigma * ti.powf(alpha))?;
        res = res.max((fit - yi).abs() / yi);
    }
    Ok(Some(EnvelopeFit { kind: EnvelopeKind::MittagLeffler, sigma, prefactor: c, residual: res }))
}
