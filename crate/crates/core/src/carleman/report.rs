use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::field::{weighted_l2, Cube, Grid2D, Point, Region, ScalarField};

/// How the fitted constant enters the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs ≤ C · rhs`; the fitted `C = lhs / rhs` is the smallest valid one.
    AtMost,
    /// `lhs ≥ C · rhs`; the fitted `C = lhs / rhs` is the largest valid one.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Terms {
    pub lhs: BTreeMap<String, f64>,
    pub rhs: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlemanCheckReport {
    pub inequality: String,
    pub tau: f64,
    pub params: BTreeMap<String, f64>,
    pub terms: Terms,
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Direction,
    #[serde(rename = "fitted_C")]
    pub fitted_c: f64,
    /// Both sides vanish; the inequality holds for every constant.
    pub vacuous: bool,
    pub flags: BTreeMap<String, bool>,
}

impl CarlemanCheckReport {
    pub(crate) fn assemble(
        inequality: &str,
        tau: f64,
        direction: Direction,
        lhs_terms: Vec<(&str, f64)>,
        rhs_terms: Vec<(&str, f64)>,
    ) -> Result<Self> {
        let lhs: f64 = lhs_terms.iter().map(|t| t.1).sum();
        let rhs: f64 = rhs_terms.iter().map(|t| t.1).sum();
        let vacuous = lhs == 0.0 && rhs == 0.0;
        let fitted_c = if vacuous {
            0.0
        } else if rhs == 0.0 {
            return Err(LabError::DegenerateField(format!(
                "{inequality}: the controlling side vanishes while the estimated side is {lhs}"
            )));
        } else {
            lhs / rhs
        };
        let map = |v: Vec<(&str, f64)>| v.into_iter().map(|(k, x)| (k.to_string(), x)).collect();
        Ok(CarlemanCheckReport {
            inequality: inequality.to_string(),
            tau,
            params: BTreeMap::new(),
            terms: Terms {
                lhs: map(lhs_terms),
                rhs: map(rhs_terms),
            },
            lhs,
            rhs,
            direction,
            fitted_c,
            vacuous,
            flags: BTreeMap::new(),
        })
    }

    pub(crate) fn param(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.to_string(), v);
        self
    }

    pub(crate) fn flag(mut self, key: &str, v: bool) -> Self {
        self.flags.insert(key.to_string(), v);
        self
    }

    /// Whether the inequality holds with the constant `c`.
    pub fn holds_with(&self, c: f64) -> bool {
        match self.direction {
            Direction::AtMost => self.lhs <= c * self.rhs,
            Direction::AtLeast => self.lhs >= c * self.rhs,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// The cube of nodes at least `margin` steps from the grid edge.
pub(crate) fn inset(grid: &Grid2D, margin: usize) -> Result<Region> {
    let n = grid.resolution();
    if n <= 2 * margin + 1 {
        return Err(LabError::InvalidGrid(format!(
            "resolution {n} leaves no nodes {margin} steps from the edge"
        )));
    }
    let h = grid.spacing();
    Ok(Region::cube(Cube::new(
        grid.node(margin, margin),
        (n - 1 - 2 * margin) as f64 * h,
    )?))
}

/// `‖w · f‖` over the valid interior of `f`.
pub(crate) fn wnorm(f: &ScalarField, margin: usize, w: impl Fn(Point) -> f64) -> Result<f64> {
    let region = inset(f.grid(), margin.max(f.invalid_margin()))?;
    weighted_l2(f, w, 0, &region)
}

/// Fails when any of `fields` is nonzero within one grid step of `pole`.
pub(crate) fn require_clear_of(pole: Point, fields: &[&ScalarField]) -> Result<()> {
    for f in fields {
        let g = f.grid();
        let ball = Region::ball(pole, g.spacing() * 1.0001)?;
        for (i, j, _) in ball.nodes(g) {
            if f.is_valid(i, j) && f.at(i, j) != 0.0 {
                return Err(LabError::Support(format!(
                    "support reaches the weight singularity at ({}, {})",
                    pole.x, pole.y
                )));
            }
        }
    }
    Ok(())
}

/// `(max − min) / min` of a set of positive constants.
pub fn relative_spread(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo > 0.0 {
        (hi - lo) / lo
    } else {
        f64::INFINITY
    }
}
