use crate::eigen::EigenPair;
use crate::error::{param, Result};
use crate::spatial::Field;
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupWindow {
    pub t_lo: f64,
    pub t_hi: f64,
}

/// (Gamma(alpha+1) / (4 (H0 + 1/2)))^{1/alpha} <= T_max <= (Gamma(alpha+1) / H0)^{1/alpha}.
pub fn blowup_window(alpha: f64, h0: f64) -> Result<BlowupWindow> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(param(format!("alpha = {alpha} outside (0, 1]")));
    }
    if !(h0 > 0.0) {
        return Err(param(format!("H0 must be positive, got {h0}")));
    }
    let g = gamma(alpha + 1.0);
    Ok(BlowupWindow {
        t_lo: (g / (4.0 * (h0 + 0.5))).powf(1.0 / alpha),
        t_hi: (g / h0).powf(1.0 / alpha),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupFunctional {
    /// int u0 e1 dx
    pub h0: f64,
    /// 1 + lambda1
    pub threshold: f64,
    pub triggers: bool,
}

pub fn blowup_functional(u0: &Field, pair: &EigenPair) -> Result<BlowupFunctional> {
    let h0 = u0.dot(&pair.e1)?;
    let threshold = 1.0 + pair.lambda1;
    Ok(BlowupFunctional { h0, threshold, triggers: h0 >= threshold })
}
