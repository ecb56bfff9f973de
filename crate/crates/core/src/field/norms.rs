use super::grid::Point;
use super::region::Region;
use super::scalar::ScalarField;
use crate::error::{LabError, Result};

fn region_nodes(field: &ScalarField, region: &Region) -> Result<Vec<(usize, usize, f64)>> {
    let nodes = region.nodes(field.grid());
    if nodes.is_empty() {
        return Err(LabError::RegionEmpty);
    }
    if field.invalid_margin() > 0 && nodes.iter().any(|&(i, j, _)| !field.is_valid(i, j)) {
        return Err(LabError::BoundaryMargin {
            margin: field.invalid_margin(),
        });
    }
    Ok(nodes)
}

/// Maximum of `|u|` over the nodes inside `region`.
pub fn sup_norm(field: &ScalarField, region: &Region) -> Result<f64> {
    let nodes = region_nodes(field, region)?;
    Ok(nodes
        .iter()
        .fold(0.0_f64, |m, &(i, j, _)| m.max(field.at(i, j).abs())))
}

/// Discrete L² norm with node-centered weights.
pub fn l2_norm(field: &ScalarField, region: &Region) -> Result<f64> {
    let nodes = region_nodes(field, region)?;
    let s: f64 = nodes
        .iter()
        .map(|&(i, j, w)| {
            let v = field.at(i, j);
            v * v * w
        })
        .sum();
    Ok(s.sqrt())
}

/// `‖weight(x) · r^power · u‖` over `region`, with `r` measured from the
/// region center. Nodes where `u` is exactly zero contribute nothing and
/// their weight is never evaluated, so singular weights are allowed
/// outside the support.
pub fn weighted_l2(
    field: &ScalarField,
    weight: impl Fn(Point) -> f64,
    radial_power: i32,
    region: &Region,
) -> Result<f64> {
    let nodes = region_nodes(field, region)?;
    let c = region.center();
    let grid = field.grid();
    let mut s = 0.0;
    for &(i, j, w) in &nodes {
        let v = field.at(i, j);
        if v == 0.0 {
            continue;
        }
        let p = grid.node(i, j);
        let k = weight(p) * p.dist(c).powi(radial_power);
        if !k.is_finite() {
            return Err(LabError::SingularWeight {
                i,
                j,
                x: p.x,
                y: p.y,
            });
        }
        s += (k * v) * (k * v) * w;
    }
    Ok(s.sqrt())
}

/// L² norm of several component fields taken jointly, i.e.
/// `(Σₖ ‖uₖ‖²)^{1/2}` with a shared weight.
pub fn weighted_l2_vector(
    components: &[&ScalarField],
    weight: impl Fn(Point) -> f64,
    radial_power: i32,
    region: &Region,
) -> Result<f64> {
    let mut s = 0.0;
    for f in components {
        let n = weighted_l2(f, &weight, radial_power, region)?;
        s += n * n;
    }
    Ok(s.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::grid::Grid2D;
    use crate::field::region::Cube;

    #[test]
    fn sup_of_constant() {
        let g = Grid2D::centered(1.0, 33).unwrap();
        let u = ScalarField::constant(g, 1.0).unwrap();
        let b = Region::ball(Point::new(0.1, -0.2), 0.3).unwrap();
        assert_eq!(sup_norm(&u, &b).unwrap(), 1.0);
    }

    #[test]
    fn empty_region_is_an_error() {
        let g = Grid2D::centered(1.0, 5).unwrap();
        let u = ScalarField::constant(g, 1.0).unwrap();
        let b = Region::ball(Point::new(0.25, 0.25), 0.1).unwrap();
        assert!(matches!(sup_norm(&u, &b), Err(LabError::RegionEmpty)));
        let far = Region::ball(Point::new(5.0, 5.0), 0.1).unwrap();
        assert!(matches!(l2_norm(&u, &far), Err(LabError::RegionEmpty)));
    }

    #[test]
    fn unit_square_area() {
        let g = Grid2D::square(0.0, 0.0, 1.0, 129).unwrap();
        let u = ScalarField::constant(g, 1.0).unwrap();
        let q = Region::cube(Cube::new(Point::ORIGIN, 1.0).unwrap());
        let n = l2_norm(&u, &q).unwrap();
        assert!((n - 1.0).abs() < 2.0 * g.spacing());
    }

    #[test]
    fn singular_weight_names_the_node() {
        let g = Grid2D::centered(1.0, 5).unwrap();
        let u = ScalarField::constant(g, 1.0).unwrap();
        let b = Region::ball(Point::ORIGIN, 0.6).unwrap();
        let err = weighted_l2(&u, |_| 1.0, -2, &b).unwrap_err();
        assert!(matches!(err, LabError::SingularWeight { i: 2, j: 2, .. }));
    }
}
