use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }
}

impl std::ops::Add for Point {
    type Output = Point;

    fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }
}

/// Uniform square grid with `resolution` nodes per axis.
///
/// Node `(i, j)` sits at `origin + (i h, j h)`; `i` runs along x. The
/// resolution is odd so that a center node always exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    origin: Point,
    extent: f64,
    resolution: usize,
}

impl Grid2D {
    pub fn new(origin: Point, extent: f64, resolution: usize) -> Result<Self> {
        if resolution < 3 {
            return Err(LabError::InvalidGrid(format!(
                "resolution {resolution} is below 3"
            )));
        }
        if resolution.is_multiple_of(2) {
            return Err(LabError::InvalidGrid(format!(
                "resolution {resolution} is even; a center node is required"
            )));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(LabError::InvalidGrid(format!("extent {extent} must be positive")));
        }
        if !(origin.x.is_finite() && origin.y.is_finite()) {
            return Err(LabError::InvalidGrid("origin must be finite".into()));
        }
        Ok(Grid2D {
            origin,
            extent,
            resolution,
        })
    }

    /// Grid covering `[-half, half]²`.
    pub fn centered(half: f64, resolution: usize) -> Result<Self> {
        Grid2D::new(Point::new(-half, -half), 2.0 * half, resolution)
    }

    /// Grid covering `[x0, x0 + side] × [y0, y0 + side]`.
    pub fn square(x0: f64, y0: f64, side: f64, resolution: usize) -> Result<Self> {
        Grid2D::new(Point::new(x0, y0), side, resolution)
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn spacing(&self) -> f64 {
        self.extent / (self.resolution - 1) as f64
    }

    pub fn node_count(&self) -> usize {
        self.resolution * self.resolution
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.resolution + i
    }

    pub fn node(&self, i: usize, j: usize) -> Point {
        let h = self.spacing();
        Point::new(self.origin.x + i as f64 * h, self.origin.y + j as f64 * h)
    }

    pub fn max_corner(&self) -> Point {
        Point::new(self.origin.x + self.extent, self.origin.y + self.extent)
    }

    pub fn center(&self) -> Point {
        Point::new(
            self.origin.x + 0.5 * self.extent,
            self.origin.y + 0.5 * self.extent,
        )
    }

    /// Geometric tolerance used for membership tests.
    pub fn tol(&self) -> f64 {
        1e-9 * self.spacing()
    }

    pub fn contains(&self, p: Point) -> bool {
        let t = self.tol();
        let hi = self.max_corner();
        p.x >= self.origin.x - t && p.x <= hi.x + t && p.y >= self.origin.y - t && p.y <= hi.y + t
    }

    /// Whether the closed disk `B_r(c)` lies inside the grid rectangle.
    pub fn contains_disk(&self, c: Point, r: f64) -> bool {
        let t = self.tol();
        let hi = self.max_corner();
        c.x - r >= self.origin.x - t
            && c.x + r <= hi.x + t
            && c.y - r >= self.origin.y - t
            && c.y + r <= hi.y + t
    }

    /// Index range `[lo, hi]` of nodes whose coordinate lies in `[a, b]`
    /// along one axis, or `None` when empty.
    pub fn axis_range(&self, axis_origin: f64, a: f64, b: f64) -> Option<(usize, usize)> {
        let h = self.spacing();
        let t = 1e-9;
        let lo = ((a - axis_origin) / h - t).ceil().max(0.0);
        let hi = ((b - axis_origin) / h + t).floor().min((self.resolution - 1) as f64);
        if lo > hi {
            None
        } else {
            Some((lo as usize, hi as usize))
        }
    }

    pub fn x_range(&self, a: f64, b: f64) -> Option<(usize, usize)> {
        self.axis_range(self.origin.x, a, b)
    }

    pub fn y_range(&self, a: f64, b: f64) -> Option<(usize, usize)> {
        self.axis_range(self.origin.y, a, b)
    }

    /// Grid dilated by `lambda` about `center`: node `(i, j)` of the result
    /// sits at `center + lambda (node(i, j) - center)`.
    pub fn dilated(&self, center: Point, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(LabError::InvalidParameter(format!(
                "dilation factor {lambda} must be positive"
            )));
        }
        let o = center + (self.origin - center).scale(lambda);
        Grid2D::new(o, self.extent * lambda, self.resolution)
    }

    /// Number of index steps from node `(i, j)` to the nearest grid edge.
    pub fn edge_distance(&self, i: usize, j: usize) -> usize {
        let n = self.resolution - 1;
        i.min(j).min(n - i).min(n - j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_or_small_resolution() {
        assert!(Grid2D::centered(1.0, 4).is_err());
        assert!(Grid2D::centered(1.0, 1).is_err());
        assert!(Grid2D::centered(0.0, 5).is_err());
    }

    #[test]
    fn spacing_and_nodes() {
        let g = Grid2D::centered(1.0, 257).unwrap();
        assert_eq!(g.spacing(), 2.0 / 256.0);
        assert_eq!(g.node(128, 128), Point::ORIGIN);
        assert_eq!(g.node(256, 0), Point::new(1.0, -1.0));
    }

    #[test]
    fn axis_range_is_inclusive() {
        let g = Grid2D::centered(1.0, 5).unwrap();
        assert_eq!(g.x_range(-0.5, 0.5), Some((1, 3)));
        assert_eq!(g.x_range(0.1, 0.4), None);
        assert_eq!(g.x_range(-5.0, 5.0), Some((0, 4)));
    }

    #[test]
    fn dilation_keeps_center() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let d = g.dilated(Point::ORIGIN, 0.25).unwrap();
        assert_eq!(d.node(4, 4), Point::ORIGIN);
        assert!((d.spacing() - g.spacing() * 0.25).abs() < 1e-15);
    }
}
