use super::grid::Point;
use super::scalar::ScalarField;
use crate::error::{LabError, Result};

/// Four-point Lagrange weights for nodes at offsets -1, 0, 1, 2 and the
/// fractional position `t ∈ [0, 1]`, relative to a stencil starting at -1.
fn lagrange4(t: f64) -> [f64; 4] {
    let (a, b, c, d) = (t + 1.0, t, t - 1.0, t - 2.0);
    [
        -b * c * d / 6.0,
        a * c * d / 2.0,
        -a * b * d / 2.0,
        a * b * c / 6.0,
    ]
}

/// Choose the stencil start `s` (stencil nodes `s..s+4`) and the local
/// coordinate of `u` relative to node `s + 1`.
fn stencil(u: f64, n: usize) -> (usize, f64) {
    let mut k = u.floor();
    let frac = u - k;
    // Snap to a node so interpolation is exact there.
    let (k, t) = if frac < 1e-12 {
        (k, 0.0)
    } else if frac > 1.0 - 1e-12 {
        k += 1.0;
        (k, 0.0)
    } else {
        (k, frac)
    };
    let base = k as isize - 1;
    let max_start = n as isize - 4;
    let start = base.clamp(0, max_start);
    let t = t + (base - start) as f64;
    (start as usize, t)
}

/// Bicubic (tensor four-point Lagrange) interpolation, fourth-order away
/// from the edges and exact at nodes. Points closer than one cell to the
/// edge use a one-sided stencil.
pub fn sample(field: &ScalarField, p: Point) -> Result<f64> {
    let g = field.grid();
    if !g.contains(p) {
        return Err(LabError::DomainExceeded { x: p.x, y: p.y });
    }
    let n = g.resolution();
    let h = g.spacing();
    let o = g.origin();
    let ux = ((p.x - o.x) / h).clamp(0.0, (n - 1) as f64);
    let uy = ((p.y - o.y) / h).clamp(0.0, (n - 1) as f64);
    let (sx, tx) = stencil(ux, n);
    let (sy, ty) = stencil(uy, n);
    let wx = lagrange4(tx);
    let wy = lagrange4(ty);
    let mut acc = 0.0;
    for (b, wyb) in wy.iter().enumerate() {
        if *wyb == 0.0 {
            continue;
        }
        let mut row = 0.0;
        for (a, wxa) in wx.iter().enumerate() {
            if *wxa != 0.0 {
                row += wxa * field.at(sx + a, sy + b);
            }
        }
        acc += wyb * row;
    }
    Ok(acc)
}
