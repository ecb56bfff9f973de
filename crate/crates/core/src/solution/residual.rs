use crate::error::{LabError, Result};
use crate::field::{bilaplacian, l2_norm, Region, ScalarField};

/// `‖Δ_h²u − W u‖ / max(‖u‖, 10⁻³⁰)` in L²(region). The region must keep
/// two nodes of clearance from the grid edge.
pub fn residual(u: &ScalarField, w: &ScalarField, region: &Region) -> Result<f64> {
    if u.grid() != w.grid() {
        return Err(LabError::GridMismatch);
    }
    let b = bilaplacian(u)?;
    let wu = w.mul(u)?;
    let diff = b.sub(&wu)?;
    let num = l2_norm(&diff, region)?;
    let den = l2_norm(u, region)?.max(1e-30);
    Ok(num / den)
}
