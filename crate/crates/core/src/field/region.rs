use serde::{Deserialize, Serialize};

use super::grid::{Grid2D, Point};
use crate::error::{LabError, Result};

/// Closed axis-aligned square `[min.x, min.x + side] × [min.y, min.y + side]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cube {
    pub min: Point,
    pub side: f64,
}

impl Cube {
    pub fn new(min: Point, side: f64) -> Result<Self> {
        if !(side.is_finite() && side > 0.0) {
            return Err(LabError::InvalidRegion(format!("cube side {side} must be positive")));
        }
        Ok(Cube { min, side })
    }

    pub fn centered(center: Point, side: f64) -> Result<Self> {
        Cube::new(Point::new(center.x - 0.5 * side, center.y - 0.5 * side), side)
    }

    pub fn max(&self) -> Point {
        Point::new(self.min.x + self.side, self.min.y + self.side)
    }

    pub fn center(&self) -> Point {
        Point::new(self.min.x + 0.5 * self.side, self.min.y + 0.5 * self.side)
    }

    pub fn diam(&self) -> f64 {
        self.side * std::f64::consts::SQRT_2
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }
}

/// Subsets of the plane over which norms are taken. Membership of a grid
/// node is decided at its center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// Closed disk `|x - center| ≤ radius`.
    Ball { center: Point, radius: f64 },
    /// Closed annulus `inner ≤ |x - center| ≤ outer`.
    Annulus {
        center: Point,
        inner: f64,
        outer: f64,
    },
    Cube(Cube),
    /// Open upper half-disk `|x - center| < radius`, `x₂ > center.y`.
    HalfBall { center: Point, radius: f64 },
    /// Flat segment `|x₁ - center.x| ≤ half_length` on the line
    /// `x₂ = center.y`, integrated with 1-D trapezoid weights.
    Segment { center: Point, half_length: f64 },
}

impl Region {
    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        positive(radius, "ball radius")?;
        Ok(Region::Ball { center, radius })
    }

    pub fn annulus(center: Point, inner: f64, outer: f64) -> Result<Self> {
        positive(inner, "annulus inner radius")?;
        positive(outer, "annulus outer radius")?;
        if inner >= outer {
            return Err(LabError::InvalidRegion(format!(
                "annulus radii must satisfy inner < outer (got {inner} ≥ {outer})"
            )));
        }
        Ok(Region::Annulus {
            center,
            inner,
            outer,
        })
    }

    pub fn cube(cube: Cube) -> Self {
        Region::Cube(cube)
    }

    pub fn half_ball(center: Point, radius: f64) -> Result<Self> {
        positive(radius, "half-ball radius")?;
        Ok(Region::HalfBall { center, radius })
    }

    pub fn segment(center: Point, half_length: f64) -> Result<Self> {
        positive(half_length, "segment half-length")?;
        Ok(Region::Segment {
            center,
            half_length,
        })
    }

    /// Reference point for radial weights.
    pub fn center(&self) -> Point {
        match *self {
            Region::Ball { center, .. }
            | Region::Annulus { center, .. }
            | Region::HalfBall { center, .. }
            | Region::Segment { center, .. } => center,
            Region::Cube(c) => c.center(),
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, Region::Segment { .. })
    }

    /// Node-center membership test with tolerance `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match *self {
            Region::Ball { center, radius } => p.dist(center) <= radius + tol,
            Region::Annulus {
                center,
                inner,
                outer,
            } => {
                let d = p.dist(center);
                d >= inner - tol && d <= outer + tol
            }
            Region::Cube(c) => {
                let hi = c.max();
                p.x >= c.min.x - tol && p.x <= hi.x + tol && p.y >= c.min.y - tol && p.y <= hi.y + tol
            }
            Region::HalfBall { center, radius } => {
                p.y > center.y + tol && p.dist(center) < radius - tol
            }
            Region::Segment {
                center,
                half_length,
            } => (p.y - center.y).abs() <= tol && (p.x - center.x).abs() <= half_length + tol,
        }
    }

    fn bbox(&self) -> (Point, Point) {
        match *self {
            Region::Ball { center, radius }
            | Region::Annulus {
                center,
                outer: radius,
                ..
            } => (
                Point::new(center.x - radius, center.y - radius),
                Point::new(center.x + radius, center.y + radius),
            ),
            Region::Cube(c) => (c.min, c.max()),
            Region::HalfBall { center, radius } => (
                Point::new(center.x - radius, center.y),
                Point::new(center.x + radius, center.y + radius),
            ),
            Region::Segment {
                center,
                half_length,
            } => (
                Point::new(center.x - half_length, center.y),
                Point::new(center.x + half_length, center.y),
            ),
        }
    }

    /// Grid nodes inside the region, each with its quadrature weight
    /// (`h²` for planar regions, trapezoid `h` or `h/2` for segments).
    pub fn nodes(&self, grid: &Grid2D) -> Vec<(usize, usize, f64)> {
        let (lo, hi) = self.bbox();
        let (Some((i0, i1)), Some((j0, j1))) = (grid.x_range(lo.x, hi.x), grid.y_range(lo.y, hi.y))
        else {
            return Vec::new();
        };
        let tol = grid.tol();
        let h = grid.spacing();
        let mut out = Vec::new();
        for j in j0..=j1 {
            for i in i0..=i1 {
                if self.contains(grid.node(i, j), tol) {
                    out.push((i, j, h * h));
                }
            }
        }
        if self.is_segment() {
            for w in out.iter_mut() {
                w.2 = h;
            }
            if let Some(first) = out.first_mut() {
                first.2 = 0.5 * h;
            }
            if out.len() > 1 {
                if let Some(last) = out.last_mut() {
                    last.2 = 0.5 * h;
                }
            }
        }
        out
    }
}

fn positive(v: f64, what: &str) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(LabError::InvalidRegion(format!("{what} {v} must be positive")))
    }
}
