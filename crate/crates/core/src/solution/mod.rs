//! Bi-Laplace solutions: analytic families, the Navier-split boundary-value
//! solver and the unit-potential rescaling.

pub mod analytic;
pub mod bvp;
pub mod gmres;
pub mod poisson;
pub mod rescale;
pub mod residual;
pub mod spec;

pub use analytic::{AnalyticFn, Part};
pub use bvp::{solve_bilaplace_bvp, SolveOptions, SolveReport};
pub use rescale::{rescale_point, rescale_potential, rescale_to_unit_potential, Rescaled};
pub use residual::residual;
pub use spec::{BoundaryTerm, BvpParams, Family, Potential, SolutionSpec};

use crate::error::{LabError, Result};
use crate::field::ScalarField;

/// A sampled solution with its potential and the bound `M = ‖W‖_∞`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub u: ScalarField,
    pub w: ScalarField,
    pub m: f64,
    pub report: Option<SolveReport>,
}

/// Sample an analytic family: `u`, the constant potential and `M`.
pub fn generate_analytic(spec: &SolutionSpec) -> Result<Solution> {
    spec.validate()?;
    let f = spec
        .family
        .analytic()
        .ok_or_else(|| LabError::InvalidSpec("not an analytic family".into()))?;
    let grid = spec.grid()?;
    let w = f.potential();
    Ok(Solution {
        u: f.sample(grid)?,
        w: ScalarField::constant(grid, w)?,
        m: w,
        report: None,
    })
}

/// Build the data fields of a boundary-value spec and solve it.
pub fn solve_spec(spec: &SolutionSpec, opts: &SolveOptions) -> Result<Solution> {
    spec.validate()?;
    let Family::Bvp(p) = &spec.family else {
        return Err(LabError::InvalidSpec("not a boundary-value family".into()));
    };
    let grid = spec.grid()?;
    let w = ScalarField::from_fn(grid, |x| p.potential.eval(x))?;
    let g0 = ScalarField::from_fn(grid, |x| spec::eval_terms(&p.g0, x))?;
    let g1 = ScalarField::from_fn(grid, |x| spec::eval_terms(&p.g1, x))?;
    let (u, report) = solve_bilaplace_bvp(&w, &g0, &g1, opts)?;
    let m = w.max_abs();
    Ok(Solution {
        u,
        w,
        m,
        report: Some(report),
    })
}

/// Dispatch on the family.
pub fn materialize(spec: &SolutionSpec, opts: &SolveOptions) -> Result<Solution> {
    match spec.family {
        Family::Bvp(_) => solve_spec(spec, opts),
        _ => generate_analytic(spec),
    }
}
