use serde::{Deserialize, Serialize};

use super::boundary::require_half_ball;
use super::report::{CarlemanCheckReport, Direction};
use crate::error::{LabError, Result};
use crate::field::{
    derivative, gradient, gradient_norm, hessian_norm, l2_norm, laplacian, multi_indices,
    sup_norm, weighted_l2, Point, Region, ScalarField,
};

/// `0 < c₄ < c₃ < c₂ < c₁ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellRadii {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl ShellRadii {
    pub fn new(c4: f64, c3: f64, c2: f64, c1: f64) -> Result<Self> {
        if !(0.0 < c4 && c4 < c3 && c3 < c2 && c2 < c1 && c1 < 1.0) {
            return Err(LabError::InvalidParameter(format!(
                "shell radii must satisfy 0 < c₄ < c₃ < c₂ < c₁ < 1 (got {c4}, {c3}, {c2}, {c1})"
            )));
        }
        Ok(ShellRadii { c1, c2, c3, c4 })
    }
}

/// `Σ_{|α|≤3}‖r^{|α|}∂^αu‖_{A(c₃R,c₂R)} ≤ C(‖W‖+1)³‖u‖_{A(c₄R,c₁R)}`, with
/// `r = |x − center|` and the sum over individual multi-indices.
pub fn check_caccioppoli_interior(
    u: &ScalarField,
    w: &ScalarField,
    center: Point,
    r: f64,
    radii: &ShellRadii,
) -> Result<CarlemanCheckReport> {
    if u.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    let inner = Region::annulus(center, radii.c3 * r, radii.c2 * r)?;
    let outer = Region::annulus(center, radii.c4 * r, radii.c1 * r)?;
    const NAMES: [&str; 4] = ["order_0", "order_1", "order_2", "order_3"];
    let mut lhs = Vec::with_capacity(4);
    for (k, name) in NAMES.iter().enumerate() {
        let mut s = 0.0;
        for alpha in multi_indices(k) {
            let d = derivative(u, alpha)?;
            s += weighted_l2(&d, |_| 1.0, k as i32, &inner)?;
        }
        lhs.push((*name, s));
    }
    let wsup = sup_norm(w, &outer)?;
    let rhs = (wsup + 1.0).powi(3) * l2_norm(u, &outer)?;
    Ok(CarlemanCheckReport::assemble(
        "hihcac",
        0.0,
        Direction::AtMost,
        lhs,
        vec![("potential_u", rhs)],
    )?
    .param("r", r)
    .param("potential_sup", wsup))
}

/// `Σ_{j≤3}‖∂^j_ν u‖_{H^{3−j}(𝐁_ρ)}` with tangential derivatives by
/// central differences along the flat boundary.
pub fn cauchy_data_norm(u: &ScalarField, rho: f64) -> Result<f64> {
    let seg = Region::segment(Point::ORIGIN, rho)?;
    let count = seg.nodes(u.grid()).len();
    if count < MIN_TRACE_NODES {
        return Err(LabError::BoundaryResolution(format!(
            "𝐁_{rho} holds {count} nodes, need at least {MIN_TRACE_NODES}"
        )));
    }
    let mut total = 0.0;
    for j in 0..=3 {
        let mut sq = 0.0;
        for k in 0..=3 - j {
            let d = derivative(u, (k, j))?;
            let n = l2_norm(&d, &seg)?;
            sq += n * n;
        }
        total += sq.sqrt();
    }
    Ok(total)
}

pub const MIN_TRACE_NODES: usize = 17;

/// `‖∇Δu‖_{B⁺_{1/2}} + ‖∇²u‖_{B⁺_{1/2}} + ‖∇u‖_{B⁺_{1/2}}
///  ≤ C(M‖u‖_{B⁺₂} + Σ_{j≤3}‖∂^j_ν u‖_{H^{3−j}(𝐁₂)})`, `M = max(‖W‖_∞, 1)`.
pub fn check_caccioppoli_boundary(u: &ScalarField, w: &ScalarField) -> Result<CarlemanCheckReport> {
    if u.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    require_half_ball(u, 2.0, 4)?;
    let small = Region::half_ball(Point::ORIGIN, 0.5)?;
    let big = Region::half_ball(Point::ORIGIN, 2.0)?;
    let lap = laplacian(u)?;
    let (lx, ly) = gradient(&lap)?;
    let grad_lap = crate::field::weighted_l2_vector(&[&lx, &ly], |_| 1.0, 0, &small)?;
    let hess = l2_norm(&hessian_norm(u)?, &small)?;
    let grad = l2_norm(&gradient_norm(u)?, &small)?;
    let m = sup_norm(w, &big)?.max(1.0);
    let bulk = m * l2_norm(u, &big)?;
    let cauchy = cauchy_data_norm(u, 2.0)?;
    Ok(CarlemanCheckReport::assemble(
        "caccioppoli-boundary",
        0.0,
        Direction::AtMost,
        vec![("grad_laplace", grad_lap), ("hessian", hess), ("gradient", grad)],
        vec![("potential_u", bulk), ("cauchy_data", cauchy)],
    )?
    .param("m", m))
}
