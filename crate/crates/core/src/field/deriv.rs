//! Central finite differences, second-order accurate.

use super::scalar::ScalarField;
use crate::error::{LabError, Result};

/// Multi-index `(order in x₁, order in x₂)`.
pub type MultiIndex = (usize, usize);

/// Every multi-index of total order `m`, ordered by decreasing x-order.
pub fn multi_indices(m: usize) -> Vec<MultiIndex> {
    (0..=m).rev().map(|a| (a, m - a)).collect()
}

/// Stencil half-width of the 1-D central difference of the given order.
fn reach(order: usize) -> usize {
    order.div_ceil(2)
}

fn stencil(order: usize) -> &'static [(isize, f64)] {
    match order {
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => &[(0, 1.0)],
    }
}

/// Apply the 1-D difference of `order` along x (`axis = 0`) or y.
fn diff_axis(values: &[f64], n: usize, h: f64, order: usize, axis: usize) -> Vec<f64> {
    if order == 0 {
        return values.to_vec();
    }
    let r = reach(order);
    let scale = h.powi(order as i32).recip();
    let st = stencil(order);
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            let k = if axis == 0 { i } else { j };
            if k < r || k + r >= n {
                continue;
            }
            let mut s = 0.0;
            for &(o, c) in st {
                let (ii, jj) = if axis == 0 {
                    ((i as isize + o) as usize, j)
                } else {
                    (i, (j as isize + o) as usize)
                };
                s += c * values[jj * n + ii];
            }
            out[j * n + i] = s * scale;
        }
    }
    out
}

fn raw_derivative(field: &ScalarField, alpha: MultiIndex) -> Vec<f64> {
    let g = field.grid();
    let n = g.resolution();
    let h = g.spacing();
    let vx = diff_axis(field.values(), n, h, alpha.0, 0);
    diff_axis(&vx, n, h, alpha.1, 1)
}

fn masked(field: &ScalarField, mut values: Vec<f64>, margin: usize) -> Result<ScalarField> {
    let g = *field.grid();
    let n = g.resolution();
    for j in 0..n {
        for i in 0..n {
            if g.edge_distance(i, j) < margin {
                values[j * n + i] = 0.0;
            }
        }
    }
    ScalarField::with_margin(g, values, margin)
}

/// `∂^α u` by central differences. Nodes within `|α|` steps of the grid
/// edge (on top of any margin the input already carries) are invalid.
pub fn derivative(field: &ScalarField, alpha: MultiIndex) -> Result<ScalarField> {
    let order = alpha.0 + alpha.1;
    if order > 4 {
        return Err(LabError::UnsupportedOrder(order));
    }
    if field.grid().resolution() < order + 3 {
        return Err(LabError::InvalidGrid(format!(
            "resolution {} too small for order {order}",
            field.grid().resolution()
        )));
    }
    let margin = field.invalid_margin() + order;
    masked(field, raw_derivative(field, alpha), margin)
}

/// Five-point Laplacian.
pub fn laplacian(field: &ScalarField) -> Result<ScalarField> {
    let a = raw_derivative(field, (2, 0));
    let b = raw_derivative(field, (0, 2));
    let v = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    masked(field, v, field.invalid_margin() + 1)
}

/// Thirteen-point bi-Laplacian, the five-point Laplacian applied twice.
pub fn bilaplacian(field: &ScalarField) -> Result<ScalarField> {
    laplacian(&laplacian(field)?)
}

/// Gradient components `(∂₁u, ∂₂u)`.
pub fn gradient(field: &ScalarField) -> Result<(ScalarField, ScalarField)> {
    let m = field.invalid_margin() + 1;
    Ok((
        masked(field, raw_derivative(field, (1, 0)), m)?,
        masked(field, raw_derivative(field, (0, 1)), m)?,
    ))
}

/// Pointwise `|∇u|`.
pub fn gradient_norm(field: &ScalarField) -> Result<ScalarField> {
    let (gx, gy) = gradient(field)?;
    let v = gx
        .values()
        .iter()
        .zip(gy.values())
        .map(|(a, b)| a.hypot(*b))
        .collect();
    ScalarField::with_margin(*field.grid(), v, gx.invalid_margin())
}

/// Pointwise Frobenius norm of the Hessian, `(u₁₁² + 2u₁₂² + u₂₂²)^{1/2}`.
pub fn hessian_norm(field: &ScalarField) -> Result<ScalarField> {
    let m = field.invalid_margin() + 1;
    let xx = raw_derivative(field, (2, 0));
    let xy = raw_derivative(field, (1, 1));
    let yy = raw_derivative(field, (0, 2));
    let v = (0..xx.len())
        .map(|k| (xx[k] * xx[k] + 2.0 * xy[k] * xy[k] + yy[k] * yy[k]).sqrt())
        .collect();
    masked(field, v, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::grid::Grid2D;

    #[test]
    fn order_five_rejected() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let u = ScalarField::zeros(g);
        assert!(matches!(
            derivative(&u, (3, 2)),
            Err(LabError::UnsupportedOrder(5))
        ));
    }

    #[test]
    fn quadratic_second_derivative() {
        let g = Grid2D::centered(1.0, 17).unwrap();
        let u = ScalarField::from_fn(g, |p| p.x * p.x).unwrap();
        let d = derivative(&u, (2, 0)).unwrap();
        assert_eq!(d.invalid_margin(), 2);
        for j in 2..15 {
            for i in 2..15 {
                assert!((d.at(i, j) - 2.0).abs() < 1e-10);
            }
        }
        assert_eq!(d.at(0, 5), 0.0);
    }

    #[test]
    fn multi_index_listing() {
        assert_eq!(multi_indices(2), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(multi_indices(0), vec![(0, 0)]);
    }

    #[test]
    fn fourth_difference_of_quartic() {
        let g = Grid2D::centered(1.0, 17).unwrap();
        let u = ScalarField::from_fn(g, |p| p.y.powi(4)).unwrap();
        let d = derivative(&u, (0, 4)).unwrap();
        assert!((d.at(8, 8) - 24.0).abs() < 1e-6);
    }
}
