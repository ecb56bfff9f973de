use crate::error::{LabError, Result};
use crate::field::{sample, Grid2D, Point, ScalarField};

/// Result of the change of variables `ū(x) = u(x / M^{1/4})`.
#[derive(Debug, Clone)]
pub struct Rescaled {
    pub field: ScalarField,
    /// `M^{1/4}`.
    pub factor: f64,
    /// Bound on `‖W̄‖_∞ = ‖W‖_∞ / M`, which is at most one when `‖W‖_∞ ≤ M`.
    pub potential_bound: f64,
}

pub fn rescale_factor(m: f64) -> Result<f64> {
    if !(m.is_finite() && m >= 1.0) {
        return Err(LabError::InvalidParameter(format!(
            "rescaling needs M ≥ 1 (got {m})"
        )));
    }
    Ok(m.powf(0.25))
}

/// `ū(x) = u(x / M^{1/4})` at a single point.
pub fn rescale_point(u: &ScalarField, m: f64, x: Point) -> Result<f64> {
    let s = rescale_factor(m)?;
    sample(u, x.scale(1.0 / s))
}

/// Sample `ū` on `target`, or on the source grid dilated by `M^{1/4}` about
/// the origin when no target is given (node values are then carried over
/// exactly).
pub fn rescale_to_unit_potential(
    u: &ScalarField,
    m: f64,
    target: Option<&Grid2D>,
) -> Result<Rescaled> {
    let s = rescale_factor(m)?;
    let grid = match target {
        Some(g) => *g,
        None => u.grid().dilated(Point::ORIGIN, s)?,
    };
    let field = resample(u, &grid, 1.0 / s, 1.0)?;
    Ok(Rescaled {
        field,
        factor: s,
        potential_bound: 1.0,
    })
}

/// `W̄(x) = W(x / M^{1/4}) / M` on `target`.
pub fn rescale_potential(w: &ScalarField, m: f64, target: &Grid2D) -> Result<ScalarField> {
    let s = rescale_factor(m)?;
    resample(w, target, 1.0 / s, 1.0 / m)
}

fn resample(f: &ScalarField, grid: &Grid2D, shrink: f64, gain: f64) -> Result<ScalarField> {
    let n = grid.resolution();
    let mut values = Vec::with_capacity(grid.node_count());
    for j in 0..n {
        for i in 0..n {
            values.push(gain * sample(f, grid.node(i, j).scale(shrink))?);
        }
    }
    ScalarField::new(*grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_below_one_rejected() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let u = ScalarField::zeros(g);
        assert!(rescale_to_unit_potential(&u, 0.5, None).is_err());
    }

    #[test]
    fn query_outside_source() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let u = ScalarField::zeros(g);
        assert!(matches!(
            rescale_point(&u, 1.0, Point::new(2.0, 0.0)),
            Err(LabError::DomainExceeded { .. })
        ));
    }
}
