use super::report::{CarlemanCheckReport, Direction};
use super::weights::{tau_admissible, TauLemma, WeightPsi};
use crate::error::{LabError, Result};
use crate::field::{
    bilaplacian, gradient, gradient_norm, laplacian, weighted_l2, Point, Region, ScalarField,
};

/// Radius of the half-ball on which the boundary estimate is stated.
pub const HALF_BALL_RADIUS: f64 = 3.0;

/// Grid and support requirements shared by the half-ball checks: the
/// flat boundary must be a grid row, the disk of radius `radius` plus a
/// stencil margin must fit, and `v` must vanish on the closed upper half
/// plane outside `B_radius`.
pub(crate) fn require_half_ball(v: &ScalarField, radius: f64, margin: usize) -> Result<()> {
    let g = v.grid();
    let h = g.spacing();
    if !g.contains_disk(Point::ORIGIN, radius + margin as f64 * h) {
        return Err(LabError::Support(format!(
            "grid does not hold B_{radius}(0) with a {margin}-node margin"
        )));
    }
    if g.y_range(0.0, 0.0).is_none() {
        return Err(LabError::Support("the line x₂ = 0 is not a grid row".into()));
    }
    Ok(())
}

fn require_compact(v: &ScalarField, radius: f64) -> Result<()> {
    let g = v.grid();
    let tol = g.tol();
    for j in 0..g.resolution() {
        for i in 0..g.resolution() {
            let p = g.node(i, j);
            if p.y >= -tol && p.norm() >= radius - tol && v.at(i, j) != 0.0 {
                return Err(LabError::Support(format!(
                    "v is nonzero at ({}, {}) on or beyond the curved boundary",
                    p.x, p.y
                )));
            }
        }
    }
    Ok(())
}

/// The boundary estimate on `B⁺₃ ∪ 𝐁₃`:
/// `‖e^{τψ}(Δ²v − Wv)‖_{B⁺} + τ^{3/2}s²‖e^{τψ}Δv‖_𝐁 + τ^{1/2}s‖e^{τψ}∇Δv‖_𝐁
///  + τ³s⁴‖e^{τψ}v‖_𝐁 + τ²s³‖e^{τψ}∇v‖_𝐁 ≥ C τ³s⁴‖e^{τψ}v‖_{B⁺}`.
pub fn check_carleman_boundary(
    v: &ScalarField,
    w: &ScalarField,
    tau: f64,
    psi: &WeightPsi,
    c_tau: f64,
) -> Result<CarlemanCheckReport> {
    if v.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    let rad = HALF_BALL_RADIUS;
    require_half_ball(v, rad, 3)?;
    require_compact(v, rad)?;
    let flags = tau_admissible(tau, w.max_abs(), TauLemma::Boundary, c_tau)?;

    let lap = laplacian(v)?;
    let (lx, ly) = gradient(&lap)?;
    let op = bilaplacian(v)?.sub(&w.mul(v)?)?;
    let grad = gradient_norm(v)?;
    let half = Region::half_ball(Point::ORIGIN, rad)?;
    let flat = Region::segment(Point::ORIGIN, rad)?;
    let e = |p: Point| (tau * psi.psi(p)).exp();
    let s = psi.s;

    let interior = weighted_l2(&op, e, 0, &half)?;
    let b_lap = tau.powf(1.5) * s * s * weighted_l2(&lap, e, 0, &flat)?;
    let gl = crate::field::weighted_l2_vector(&[&lx, &ly], e, 0, &flat)?;
    let b_grad_lap = tau.sqrt() * s * gl;
    let b_v = tau.powi(3) * s.powi(4) * weighted_l2(v, e, 0, &flat)?;
    let b_grad = tau * tau * s.powi(3) * weighted_l2(&grad, e, 0, &flat)?;
    let rhs = tau.powi(3) * s.powi(4) * weighted_l2(v, e, 0, &half)?;
    Ok(CarlemanCheckReport::assemble(
        "carleman-2",
        tau,
        Direction::AtLeast,
        vec![
            ("interior_operator", interior),
            ("trace_laplace", b_lap),
            ("trace_grad_laplace", b_grad_lap),
            ("trace_v", b_v),
            ("trace_grad_v", b_grad),
        ],
        vec![("interior_v", rhs)],
    )?
    .param("s", s)
    .param("b_n", psi.b_n)
    .param("potential_sup", w.max_abs())
    .flag("tau_quantized", flags.quantized)
    .flag("tau_large", flags.large_enough.unwrap_or(true)))
}
