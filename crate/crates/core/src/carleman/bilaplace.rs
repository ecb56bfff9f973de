use serde::{Deserialize, Serialize};

use super::report::{require_clear_of, wnorm, CarlemanCheckReport, Direction};
use super::weights::{tau_admissible, TauLemma, WeightPhi, QUANTIZATION_GAP};
use crate::error::{LabError, Result};
use crate::field::{bilaplacian, Point, ScalarField};

/// `τ²‖e^{τφ}f‖ ≤ C‖r⁴e^{τφ}(Δ²f − Wf)‖`, pole at the origin. The
/// magnitude flag uses the threshold constant `c_tau`.
pub fn check_carleman_bilaplace(
    f: &ScalarField,
    w: &ScalarField,
    tau: f64,
    weight: &WeightPhi,
    c_tau: f64,
) -> Result<CarlemanCheckReport> {
    if f.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    let flags = tau_admissible(tau, w.max_abs(), TauLemma::Bilaplace, c_tau)?;
    let op = bilaplacian(f)?.sub(&w.mul(f)?)?;
    require_clear_of(Point::ORIGIN, &[f, &op])?;
    let wt = |k: i32| move |p: Point| {
        let r = p.norm();
        weight.exp_tau_phi(tau, r) * r.powi(k)
    };
    let lhs = tau * tau * wnorm(f, 2, wt(0))?;
    let rhs = wnorm(&op, 2, wt(4))?;
    Ok(CarlemanCheckReport::assemble(
        "Carle2",
        tau,
        Direction::AtMost,
        vec![("tau2_f", lhs)],
        vec![("r4_operator_f", rhs)],
    )?
    .param("eps", weight.eps)
    .param("potential_sup", w.max_abs())
    .flag("tau_quantized", flags.quantized)
    .flag("tau_large", flags.large_enough.unwrap_or(true)))
}

/// `2τ`, moved by `1/2` when that lands within the quantization gap.
pub fn doubled_tau(tau: f64) -> f64 {
    let t = 2.0 * tau;
    if (t - t.round()).abs() < QUANTIZATION_GAP {
        t + 0.5
    } else {
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauScaling {
    pub tau: f64,
    pub tau_doubled: f64,
    pub c: f64,
    pub c_doubled: f64,
    /// `C(τ') / C(τ)`.
    pub growth: f64,
}

impl TauScaling {
    pub fn passes(&self) -> bool {
        self.growth >= 3.0
    }
}

pub fn tau_scaling(
    f: &ScalarField,
    w: &ScalarField,
    tau: f64,
    weight: &WeightPhi,
    c_tau: f64,
) -> Result<TauScaling> {
    let t2 = doubled_tau(tau);
    let c = check_carleman_bilaplace(f, w, tau, weight, c_tau)?.fitted_c;
    let c2 = check_carleman_bilaplace(f, w, t2, weight, c_tau)?.fitted_c;
    Ok(TauScaling {
        tau,
        tau_doubled: t2,
        c,
        c_doubled: c2,
        growth: c2 / c,
    })
}
