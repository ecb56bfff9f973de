use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::field::Point;

/// `g(t) = t − e^{εt}`.
pub fn weight_g(t: f64, eps: f64) -> f64 {
    t - (eps * t).exp()
}

/// `φ(r) = −g(ln r) = −ln r + r^ε`.
pub fn weight_phi(r: f64, eps: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(LabError::InvalidParameter(format!(
            "φ is defined for r > 0 (got {r})"
        )));
    }
    Ok(-r.ln() + r.powf(eps))
}

/// Radial weight `φ` with its exponent `ε` and the radius `R₀` below
/// which it is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightPhi {
    pub eps: f64,
    pub r0: f64,
}

impl Default for WeightPhi {
    fn default() -> Self {
        WeightPhi { eps: 0.1, r0: 0.5 }
    }
}

impl WeightPhi {
    pub fn new(eps: f64, r0: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(LabError::InvalidParameter(format!("ε = {eps} must lie in (0, 1)")));
        }
        if !(r0 > 0.0) {
            return Err(LabError::InvalidParameter(format!("R₀ = {r0} must be positive")));
        }
        Ok(WeightPhi { eps, r0 })
    }

    pub fn phi(&self, r: f64) -> Result<f64> {
        weight_phi(r, self.eps)
    }

    /// `e^{τφ(r)}` evaluated as `r^{−τ} e^{τ r^ε}`; infinite at `r = 0`.
    pub fn exp_tau_phi(&self, tau: f64, r: f64) -> f64 {
        r.powf(-tau) * (tau * r.powf(self.eps)).exp()
    }

    /// Upper end `e^{τ R₀^ε}` of the range of `e^{τφ} / r^{−τ}` on `(0, R₀)`.
    pub fn comparison_bound(&self, tau: f64) -> f64 {
        (tau * self.r0.powf(self.eps)).exp()
    }

    /// Radius below which `φ' = (ε r^ε − 1)/r` is negative.
    pub fn monotone_radius(&self) -> f64 {
        (1.0 / self.eps).powf(1.0 / self.eps)
    }
}

/// `ψ(x) = e^{−s|x − b|}` with `b = (0, −b_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightPsi {
    pub s: f64,
    pub b_n: f64,
}

impl Default for WeightPsi {
    fn default() -> Self {
        WeightPsi { s: 5.0, b_n: 0.1 }
    }
}

impl WeightPsi {
    pub fn new(s: f64, b_n: f64) -> Result<Self> {
        if !(s > 0.0 && b_n > 0.0) {
            return Err(LabError::InvalidParameter(format!(
                "ψ needs s > 0 and b_n > 0 (got s = {s}, b_n = {b_n})"
            )));
        }
        Ok(WeightPsi { s, b_n })
    }

    pub fn pole(&self) -> Point {
        Point::new(0.0, -self.b_n)
    }

    /// `h(x) = −|x − b|`.
    pub fn h(&self, x: Point) -> f64 {
        -x.dist(self.pole())
    }

    pub fn psi(&self, x: Point) -> f64 {
        (self.s * self.h(x)).exp()
    }

    /// `∇ψ = −s ψ (x − b)/|x − b|`.
    pub fn grad_psi(&self, x: Point) -> Point {
        let d = x - self.pole();
        d.scale(-self.s * self.psi(x) / d.norm())
    }
}

/// Which lemma's `τ` threshold applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauLemma {
    /// Quantization only.
    Laplace,
    /// `τ > C(1 + ‖W‖^{1/2})`.
    Bilaplace,
    /// `τ > C(1 + ‖W‖^{1/3})`.
    Boundary,
}

impl TauLemma {
    pub fn exponent(self) -> Option<f64> {
        match self {
            TauLemma::Laplace => None,
            TauLemma::Bilaplace => Some(0.5),
            TauLemma::Boundary => Some(1.0 / 3.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauFlags {
    pub tau: f64,
    /// Distance from `τ` to the nearest natural number.
    pub integer_distance: f64,
    /// `dist(τ, ℕ) ≥ 1/3`.
    pub quantized: bool,
    /// `τ > C(1 + M^p)`; `None` when the lemma has no magnitude threshold.
    pub large_enough: Option<bool>,
    pub threshold: Option<f64>,
}

impl TauFlags {
    pub fn admissible(&self) -> bool {
        self.quantized && self.large_enough.unwrap_or(true)
    }
}

pub const QUANTIZATION_GAP: f64 = 1.0 / 3.0;

pub fn tau_admissible(tau: f64, m_bound: f64, lemma: TauLemma, c: f64) -> Result<TauFlags> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(LabError::InvalidParameter(format!("τ = {tau} must be positive")));
    }
    let integer_distance = (tau - tau.round()).abs();
    let threshold = lemma.exponent().map(|p| c * (1.0 + m_bound.abs().powf(p)));
    Ok(TauFlags {
        tau,
        integer_distance,
        quantized: integer_distance >= QUANTIZATION_GAP - 1e-12,
        large_enough: threshold.map(|th| tau > th),
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_and_phi_values() {
        for eps in [0.05, 0.1, 0.5] {
            assert_eq!(weight_g(0.0, eps), -1.0);
            assert_eq!(weight_phi(1.0, eps).unwrap(), 1.0);
        }
        let v = weight_phi((-10.0f64).exp(), 0.1).unwrap();
        assert!((v - (10.0 + (-1.0f64).exp())).abs() < 1e-12);
        assert!((v - 10.3679).abs() < 1e-4);
        assert!(weight_phi(0.0, 0.1).is_err());
    }

    #[test]
    fn quantization_flags() {
        let f = |t| tau_admissible(t, 0.0, TauLemma::Laplace, 1.0).unwrap().quantized;
        assert!(f(5.5));
        assert!(!f(5.2));
        assert!(f(16.0 / 3.0));
    }

    #[test]
    fn magnitude_flags() {
        let b = tau_admissible(12.5, 16.0, TauLemma::Bilaplace, 2.0).unwrap();
        assert_eq!(b.threshold, Some(10.0));
        assert_eq!(b.large_enough, Some(true));
        let s = tau_admissible(5.5, 27.0, TauLemma::Boundary, 2.0).unwrap();
        assert_eq!(s.large_enough, Some(false));
        assert!(!s.admissible());
    }
}
