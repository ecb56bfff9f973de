use serde::{Deserialize, Serialize};

use super::boundary::require_half_ball;
use super::caccioppoli::cauchy_data_norm;
use super::weights::WeightPsi;
use crate::error::{LabError, Result};
use crate::field::{l2_norm, sup_norm, Point, Region, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationExponents {
    /// `e^{−s(1+b_n)} − e^{−s(4/3+b_n)}`.
    pub p0: f64,
    /// `1 − e^{−s(1+b_n)}`.
    pub p1: f64,
    /// `p₁ / (p₁ + p₀)`.
    pub kappa: f64,
}

pub fn propagation_exponents(psi: &WeightPsi) -> Result<PropagationExponents> {
    let psi = WeightPsi::new(psi.s, psi.b_n)?;
    let (s, b) = (psi.s, psi.b_n);
    let p0 = (-s * (1.0 + b)).exp() - (-s * (4.0 / 3.0 + b)).exp();
    let p1 = 1.0 - (-s * (1.0 + b)).exp();
    Ok(PropagationExponents {
        p0,
        p1,
        kappa: p1 / (p1 + p0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub exponents: PropagationExponents,
    /// `‖u‖_{B⁺₁}`.
    pub interior: f64,
    /// `‖u‖_{B⁺₂}`.
    pub global: f64,
    /// `Σ_j ‖∂^j_ν u‖_{H^{3−j}(𝐁₂)}`.
    pub cauchy: f64,
    pub potential_sup: f64,
    /// Smallest `K` with `‖u‖_{B⁺₁} ≤ K ‖u‖_{B⁺₂}^κ (Cauchy)^{1−κ}`.
    pub constant: f64,
    /// `ln K / (1 + ‖W‖^{1/3})`, the constant in the exponential form.
    pub fitted_c: f64,
    pub vacuous: bool,
    /// Vanishing Cauchy data beside a nonzero interior norm.
    pub violation_candidate: bool,
}

pub fn check_propagation(
    u: &ScalarField,
    w: &ScalarField,
    psi: &WeightPsi,
) -> Result<PropagationReport> {
    if u.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    require_half_ball(u, 2.0, 4)?;
    let exponents = propagation_exponents(psi)?;
    let interior = l2_norm(u, &Region::half_ball(Point::ORIGIN, 1.0)?)?;
    let big = Region::half_ball(Point::ORIGIN, 2.0)?;
    let global = l2_norm(u, &big)?;
    let cauchy = cauchy_data_norm(u, 2.0)?;
    let potential_sup = sup_norm(w, &big)?;
    let vacuous = interior == 0.0;
    let violation_candidate = cauchy == 0.0 && interior > 0.0;
    let k = exponents.kappa;
    let constant = if vacuous {
        0.0
    } else if violation_candidate {
        f64::INFINITY
    } else {
        interior / (global.powf(k) * cauchy.powf(1.0 - k))
    };
    let fitted_c = if constant > 0.0 {
        constant.ln() / (1.0 + potential_sup.cbrt())
    } else {
        f64::NEG_INFINITY
    };
    Ok(PropagationReport {
        exponents,
        interior,
        global,
        cauchy,
        potential_sup,
        constant,
        fitted_c,
        vacuous,
        violation_candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let e = propagation_exponents(&WeightPsi::new(5.0, 0.1).unwrap()).unwrap();
        assert!((e.p0 - 0.003314).abs() < 1e-6);
        assert!((e.p1 - 0.995913).abs() < 1e-6);
        assert!((e.kappa - 0.99668).abs() < 1e-5);
    }
}
