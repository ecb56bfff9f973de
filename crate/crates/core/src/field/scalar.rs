use super::grid::{Grid2D, Point};
use crate::error::{LabError, Result};

/// Real values sampled at every node of a [`Grid2D`].
///
/// Fields produced by finite differences carry an `invalid_margin`: nodes
/// within that many steps of the grid edge hold no usable value (they are
/// stored as zero) and norms over regions touching them are refused.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid2D,
    values: Vec<f64>,
    invalid_margin: usize,
}

impl ScalarField {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        ScalarField::with_margin(grid, values, 0)
    }

    pub(crate) fn with_margin(grid: Grid2D, values: Vec<f64>, invalid_margin: usize) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(LabError::ValueCount {
                expected: grid.node_count(),
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let n = grid.resolution();
            return Err(LabError::NonFinite { i: k % n, j: k / n });
        }
        Ok(ScalarField {
            grid,
            values,
            invalid_margin,
        })
    }

    pub fn from_fn(grid: Grid2D, f: impl Fn(Point) -> f64) -> Result<Self> {
        let n = grid.resolution();
        let mut values = Vec::with_capacity(grid.node_count());
        for j in 0..n {
            for i in 0..n {
                values.push(f(grid.node(i, j)));
            }
        }
        ScalarField::new(grid, values)
    }

    pub fn constant(grid: Grid2D, c: f64) -> Result<Self> {
        ScalarField::new(grid, vec![c; grid.node_count()])
    }

    pub fn zeros(grid: Grid2D) -> Self {
        ScalarField {
            grid,
            values: vec![0.0; grid.node_count()],
            invalid_margin: 0,
        }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn invalid_margin(&self) -> usize {
        self.invalid_margin
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Largest absolute value over all nodes.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        ScalarField::with_margin(
            self.grid,
            self.values.iter().map(|&v| f(v)).collect(),
            self.invalid_margin,
        )
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        self.map(|v| s * v)
    }

    fn zip(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(LabError::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        ScalarField::with_margin(
            self.grid,
            values,
            self.invalid_margin.max(other.invalid_margin),
        )
    }

    pub fn add(&self, other: &ScalarField) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ScalarField) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ScalarField) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Same values on the grid dilated by `lambda` about `center`, i.e. the
    /// field `x ↦ f(center + (x - center)/lambda)` sampled exactly.
    pub fn dilated(&self, center: Point, lambda: f64) -> Result<Self> {
        Ok(ScalarField {
            grid: self.grid.dilated(center, lambda)?,
            values: self.values.clone(),
            invalid_margin: self.invalid_margin,
        })
    }

    /// Whether node `(i, j)` holds a usable value.
    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.grid.edge_distance(i, j) >= self.invalid_margin
    }
}
