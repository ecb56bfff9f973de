use serde::{Deserialize, Serialize};

use super::index::{ball_norm, require_ball, BallNorm};
use crate::carleman::weights::weight_phi;
use crate::error::{LabError, Result};
use crate::field::{Point, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBallParams {
    pub r: f64,
    pub t: f64,
    pub delta: f64,
    pub eps: f64,
    pub norm: BallNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBallExponents {
    /// `φ((1−2δ)R) − φ((2+δ)R)`.
    pub beta1: f64,
    /// `φ((2+δ)R) − φ((t−2δ)R)`.
    pub beta2: f64,
    /// `β¹ / (β¹ + β²)`.
    pub theta: f64,
    /// `(tR)^ε ≤ δ/100`, the regime in which the exponent estimates are
    /// sharp.
    pub asymptotic_regime: bool,
}

pub fn three_ball_exponents(r: f64, t: f64, delta: f64, eps: f64) -> Result<ThreeBallExponents> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(LabError::ParameterRegime(format!(
            "δ = {delta} must lie in (0, 1/2) so that (1−2δ)R > 0"
        )));
    }
    if !(t - 2.0 * delta > 2.0 + delta) {
        return Err(LabError::ParameterRegime(format!(
            "t − 2δ > 2 + δ fails for t = {t}, δ = {delta}"
        )));
    }
    if !(r > 0.0) {
        return Err(LabError::ParameterRegime(format!("R = {r} must be positive")));
    }
    let phi = |x: f64| weight_phi(x * r, eps);
    let mid = phi(2.0 + delta)?;
    let beta1 = phi(1.0 - 2.0 * delta)? - mid;
    let beta2 = mid - phi(t - 2.0 * delta)?;
    if !(beta1 > 0.0 && beta2 > 0.0) {
        return Err(LabError::ParameterRegime(format!(
            "φ is not decreasing across the shells (β¹ = {beta1}, β² = {beta2}); shrink tR"
        )));
    }
    Ok(ThreeBallExponents {
        beta1,
        beta2,
        theta: beta1 / (beta1 + beta2),
        asymptotic_regime: (t * r).powf(eps) <= delta / 100.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBallRecord {
    pub center: Point,
    pub params: ThreeBallParams,
    pub exponents: ThreeBallExponents,
    /// Norm on `B_{(2+δ)R}`.
    pub norm_mid: f64,
    /// Norm on `B_R`.
    pub norm_inner: f64,
    /// Norm on `B_{tR}`.
    pub norm_outer: f64,
    /// Smallest `C` with `‖u‖_{(2+δ)R} ≤ C ‖u‖_{tR}^θ ‖u‖_R^{1−θ}`.
    pub constant: f64,
}

pub fn check_three_ball(u: &ScalarField, x: Point, p: &ThreeBallParams) -> Result<ThreeBallRecord> {
    let ex = three_ball_exponents(p.r, p.t, p.delta, p.eps)?;
    require_ball(u.grid(), x, p.t * p.r)?;
    let norm_outer = ball_norm(u, x, p.t * p.r, p.norm)?;
    let norm_mid = ball_norm(u, x, (2.0 + p.delta) * p.r, p.norm)?;
    let norm_inner = ball_norm(u, x, p.r, p.norm)?;
    if norm_inner == 0.0 {
        return Err(LabError::DegenerateField(format!(
            "u vanishes on B_{}({}, {})",
            p.r, x.x, x.y
        )));
    }
    let th = ex.theta;
    let constant = norm_mid / (norm_outer.powf(th) * norm_inner.powf(1.0 - th));
    Ok(ThreeBallRecord {
        center: x,
        params: *p,
        exponents: ex,
        norm_mid,
        norm_inner,
        norm_outer,
        constant,
    })
}

/// `θ` along a ladder of `δ` values at fixed `R, t, ε`.
pub fn theta_ladder(r: f64, t: f64, eps: f64, deltas: &[f64]) -> Result<Vec<f64>> {
    deltas
        .iter()
        .map(|&d| three_ball_exponents(r, t, d, eps).map(|e| e.theta))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_errors_name_the_constraint() {
        let e = three_ball_exponents(0.1, 2.1, 0.05, 0.1).unwrap_err();
        assert!(e.to_string().contains("t − 2δ > 2 + δ"));
    }

    #[test]
    fn theta_tends_to_inverse_log_t() {
        let t = 4.0;
        let th = theta_ladder(1e-30, t, 0.1, &[1e-6]).unwrap()[0];
        assert!((th - 1.0 / t.log2()).abs() < 1e-5);
    }
}
