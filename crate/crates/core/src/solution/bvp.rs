//! Navier-split solver for `Δ²u = W u` with `u = g0`, `Δu = g1` on the
//! boundary of a square.
//!
//! With `L` the homogeneous-Dirichlet five-point Laplacian on interior
//! nodes and `B(g)` the boundary contribution of `g`, the split system
//! `L u + B(g0) = v`, `L v + B(g1) = W u` reduces to
//! `(I − L⁻¹L⁻¹W) u = −L⁻¹(L⁻¹B(g1) + B(g0))`. The reduced system is solved
//! directly when `W ≡ 0` and by GMRES otherwise, each operator application
//! costing two sine-transform solves.

use serde::{Deserialize, Serialize};

use super::gmres::gmres;
use super::poisson::DirichletLaplacian;
use super::residual::residual;
use crate::error::{LabError, Result};
use crate::field::{Cube, Grid2D, Region, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub restart: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restart: 50,
            max_iterations: 500,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: String,
    pub iterations: usize,
    /// Relative residual of the reduced linear system, recomputed after
    /// the solve.
    pub linear_residual: f64,
    /// `‖Δ_h²u − Wu‖/‖u‖` over nodes at least two steps from the boundary.
    pub pde_residual: f64,
    /// `‖W‖_∞ · diam⁴` of the domain.
    pub contraction: f64,
    /// Set when `contraction > 1/2`.
    pub ill_posed_regime: bool,
    pub residual_history: Vec<f64>,
}

pub const CONTRACTION_LIMIT: f64 = 0.5;
pub const LINEAR_RESIDUAL_LIMIT: f64 = 1e-10;

fn boundary_term(g: &ScalarField) -> Vec<f64> {
    let grid = g.grid();
    let n = grid.resolution();
    let m = n - 2;
    let inv = 1.0 / (grid.spacing() * grid.spacing());
    let mut out = vec![0.0; m * m];
    for j in 1..n - 1 {
        for i in 1..n - 1 {
            let mut s = 0.0;
            if i == 1 {
                s += g.at(0, j);
            }
            if i == n - 2 {
                s += g.at(n - 1, j);
            }
            if j == 1 {
                s += g.at(i, 0);
            }
            if j == n - 2 {
                s += g.at(i, n - 1);
            }
            out[(j - 1) * m + (i - 1)] = s * inv;
        }
    }
    out
}

fn interior(f: &ScalarField) -> Vec<f64> {
    let n = f.grid().resolution();
    let mut out = Vec::with_capacity((n - 2) * (n - 2));
    for j in 1..n - 1 {
        for i in 1..n - 1 {
            out.push(f.at(i, j));
        }
    }
    out
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solve with the boundary values of `g0` and `g1` (interior values of the
/// data fields are ignored).
pub fn solve_bilaplace_bvp(
    w: &ScalarField,
    g0: &ScalarField,
    g1: &ScalarField,
    opts: &SolveOptions,
) -> Result<(ScalarField, SolveReport)> {
    let grid: Grid2D = *w.grid();
    if g0.grid() != &grid || g1.grid() != &grid {
        return Err(LabError::GridMismatch);
    }
    let n = grid.resolution();
    if n < 65 {
        return Err(LabError::InvalidGrid(format!(
            "boundary-value solves need resolution ≥ 65 (got {n})"
        )));
    }
    let h = grid.spacing();
    let m = n - 2;
    let diam = grid.extent() * std::f64::consts::SQRT_2;
    let contraction = w.max_abs() * diam.powi(4);

    let mut lap = DirichletLaplacian::new(m, h);
    let wi = interior(w);
    let bg0 = boundary_term(g0);
    let bg1 = boundary_term(g1);

    let mut c = bg1.clone();
    lap.solve_in_place(&mut c);
    for (ci, b) in c.iter_mut().zip(&bg0) {
        *ci += b;
    }
    lap.solve_in_place(&mut c);
    for ci in c.iter_mut() {
        *ci = -*ci;
    }

    let zero_potential = wi.iter().all(|&x| x == 0.0);
    let mut op = |x: &[f64]| -> Vec<f64> {
        let mut t: Vec<f64> = x.iter().zip(&wi).map(|(a, b)| a * b).collect();
        lap.solve_in_place(&mut t);
        lap.solve_in_place(&mut t);
        x.iter().zip(&t).map(|(a, b)| a - b).collect()
    };

    let (u_int, iterations, history, method) = if zero_potential {
        (c.clone(), 0, Vec::new(), "direct")
    } else {
        let out = gmres(&mut op, &c, opts.restart, opts.max_iterations, opts.tolerance);
        let last = out.history.last().copied().unwrap_or(0.0);
        if !out.converged {
            return Err(LabError::SolveFailure {
                iterations: out.iterations,
                last,
                history: out.history,
            });
        }
        (out.x, out.iterations, out.history, "gmres")
    };

    let ax = op(&u_int);
    let cnorm = l2(&c);
    let rnorm = l2(&ax.iter().zip(&c).map(|(a, b)| a - b).collect::<Vec<_>>());
    let linear_residual = if cnorm > 0.0 { rnorm / cnorm } else { rnorm };
    if linear_residual > LINEAR_RESIDUAL_LIMIT {
        return Err(LabError::SolveFailure {
            iterations,
            last: linear_residual,
            history,
        });
    }

    let mut values = g0.values().to_vec();
    for j in 1..n - 1 {
        for i in 1..n - 1 {
            values[grid.index(i, j)] = u_int[(j - 1) * m + (i - 1)];
        }
    }
    let u = ScalarField::new(grid, values)?;
    let inner = Cube::new(
        grid.node(2, 2),
        grid.extent() - 4.0 * h,
    )?;
    let pde_residual = residual(&u, w, &Region::cube(inner))?;
    Ok((
        u,
        SolveReport {
            method: method.to_string(),
            iterations,
            linear_residual,
            pde_residual,
            contraction,
            ill_posed_regime: contraction > CONTRACTION_LIMIT,
            residual_history: history,
        },
    ))
}
