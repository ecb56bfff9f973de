use serde::{Deserialize, Serialize};

use super::report::{relative_spread, require_clear_of, wnorm, CarlemanCheckReport, Direction};
use super::weights::{tau_admissible, TauLemma, WeightPhi};
use crate::error::{LabError, Result};
use crate::field::{gradient_norm, hessian_norm, laplacian, Point, ScalarField};

struct Ingredients {
    grad: ScalarField,
    lap: ScalarField,
    hess: ScalarField,
}

fn ingredients(f: &ScalarField, weight: &WeightPhi) -> Result<Ingredients> {
    let grad = gradient_norm(f)?;
    let lap = laplacian(f)?;
    let hess = hessian_norm(f)?;
    require_clear_of(Point::ORIGIN, &[f, &grad, &lap, &hess])?;
    let g = f.grid();
    let r0 = weight.r0;
    for j in 0..g.resolution() {
        for i in 0..g.resolution() {
            if f.at(i, j) != 0.0 && g.node(i, j).norm() >= r0 {
                return Err(LabError::Support(format!(
                    "support leaves B_{r0}(0) at node ({i}, {j})"
                )));
            }
        }
    }
    Ok(Ingredients { grad, lap, hess })
}

/// `τ‖e^{τφ}f‖ + ‖e^{τφ}r∇f‖ ≤ C‖e^{τφ}r²Δf‖`, Lebesgue measure, pole at
/// the origin.
pub fn check_carleman_interior(
    f: &ScalarField,
    tau: f64,
    weight: &WeightPhi,
) -> Result<CarlemanCheckReport> {
    let flags = tau_admissible(tau, 0.0, TauLemma::Laplace, 0.0)?;
    let ing = ingredients(f, weight)?;
    let w = |k: i32| move |p: Point| {
        let r = p.norm();
        weight.exp_tau_phi(tau, r) * r.powi(k)
    };
    let a = tau * wnorm(f, 2, w(0))?;
    let b = wnorm(&ing.grad, 2, w(1))?;
    let c = wnorm(&ing.lap, 2, w(2))?;
    Ok(CarlemanCheckReport::assemble(
        "car-imp",
        tau,
        Direction::AtMost,
        vec![("tau_f", a), ("r_grad_f", b)],
        vec![("r2_laplace_f", c)],
    )?
    .param("eps", weight.eps)
    .param("r0", weight.r0)
    .flag("tau_quantized", flags.quantized))
}

/// The classical form with `r^{ε/2}` gains:
/// `τ^{3/2}‖e^{τφ}r^{ε/2}f‖ + τ‖e^{τφ}r^{1+ε/2}∇f‖ + τ^{−1/2}‖e^{τφ}r^{2+ε/2}∇²f‖ ≤ C‖e^{τφ}r²Δf‖`.
pub fn check_carleman_classical(
    f: &ScalarField,
    tau: f64,
    weight: &WeightPhi,
) -> Result<CarlemanCheckReport> {
    let flags = tau_admissible(tau, 0.0, TauLemma::Laplace, 0.0)?;
    let ing = ingredients(f, weight)?;
    let e = weight.eps;
    let w = |k: f64| move |p: Point| {
        let r = p.norm();
        weight.exp_tau_phi(tau, r) * r.powf(k)
    };
    let a = tau.powf(1.5) * wnorm(f, 2, w(0.5 * e))?;
    let b = tau * wnorm(&ing.grad, 2, w(1.0 + 0.5 * e))?;
    let c = tau.powf(-0.5) * wnorm(&ing.hess, 2, w(2.0 + 0.5 * e))?;
    let d = wnorm(&ing.lap, 2, w(2.0))?;
    Ok(CarlemanCheckReport::assemble(
        "carle-sec",
        tau,
        Direction::AtMost,
        vec![("tau32_f", a), ("tau_r_grad_f", b), ("tau_m12_r2_hess_f", c)],
        vec![("r2_laplace_f", d)],
    )?
    .param("eps", e)
    .param("r0", weight.r0)
    .flag("tau_quantized", flags.quantized))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DilationSweep {
    pub lambdas: Vec<f64>,
    pub invariant: Vec<f64>,
    pub classical: Vec<f64>,
    pub invariant_spread: f64,
    pub classical_spread: f64,
}

impl DilationSweep {
    /// The invariant form stays within `tol` while the classical one
    /// spreads strictly more.
    pub fn passes(&self, tol: f64) -> bool {
        self.invariant_spread <= tol && self.classical_spread > self.invariant_spread
    }
}

/// Both interior forms on `f_λ(x) = f(x/λ)` for each `λ`.
pub fn dilation_sweep(
    f: &ScalarField,
    tau: f64,
    weight: &WeightPhi,
    lambdas: &[f64],
) -> Result<DilationSweep> {
    let mut invariant = Vec::with_capacity(lambdas.len());
    let mut classical = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let fl = f.dilated(Point::ORIGIN, l)?;
        invariant.push(check_carleman_interior(&fl, tau, weight)?.fitted_c);
        classical.push(check_carleman_classical(&fl, tau, weight)?.fitted_c);
    }
    Ok(DilationSweep {
        lambdas: lambdas.to_vec(),
        invariant_spread: relative_spread(&invariant),
        classical_spread: relative_spread(&classical),
        invariant,
        classical,
    })
}
