use serde::{Deserialize, Serialize};

use super::report::{require_clear_of, wnorm, CarlemanCheckReport, Direction};
use super::weights::{tau_admissible, TauLemma};
use crate::error::Result;
use crate::field::{gradient_norm, laplacian, Point, ScalarField};

/// Measure for the power-weighted Laplace estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// `dx / r²`, invariant under dilations; in the plane the estimate then
    /// degenerates exactly at integer `τ`.
    #[default]
    ScaleInvariant,
    /// Plain `dx`.
    Lebesgue,
}

impl Measure {
    fn shift(self) -> f64 {
        match self {
            Measure::ScaleInvariant => 1.0,
            Measure::Lebesgue => 0.0,
        }
    }
}

/// `τ‖r^{−τ}f‖ + ‖r^{−τ+1}∇f‖ ≤ C‖r^{−τ+2}Δf‖` with `r = |x − pole|`.
pub fn check_carleman_laplace(
    f: &ScalarField,
    tau: f64,
    pole: Point,
    measure: Measure,
) -> Result<CarlemanCheckReport> {
    let flags = tau_admissible(tau, 0.0, TauLemma::Laplace, 0.0)?;
    let grad = gradient_norm(f)?;
    let lap = laplacian(f)?;
    require_clear_of(pole, &[f, &grad, &lap])?;
    let m = measure.shift();
    let w = |k: f64| move |p: Point| p.dist(pole).powf(k - tau - m);
    let lhs_f = tau * wnorm(f, 1, w(0.0))?;
    let lhs_g = wnorm(&grad, 1, w(1.0))?;
    let rhs = wnorm(&lap, 1, w(2.0))?;
    Ok(CarlemanCheckReport::assemble(
        "lap-car",
        tau,
        Direction::AtMost,
        vec![("tau_f", lhs_f), ("grad_f", lhs_g)],
        vec![("laplace_f", rhs)],
    )?
    .param("measure_shift", m)
    .flag("tau_quantized", flags.quantized))
}
