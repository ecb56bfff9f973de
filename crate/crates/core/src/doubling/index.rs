use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::field::{l2_norm, sample, sup_norm, Cube, Grid2D, Point, Region, ScalarField};

/// Which norm a ball quantity is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallNorm {
    Sup,
    L2,
}

pub(crate) fn require_ball(grid: &Grid2D, x: Point, r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(LabError::InvalidParameter(format!("radius {r} must be positive")));
    }
    if !grid.contains_disk(x, r) {
        return Err(LabError::InvalidRegion(format!(
            "ball of radius {r} about ({}, {}) leaves the grid",
            x.x, x.y
        )));
    }
    Ok(())
}

/// Sup over the closed ball: the nodes inside it together with bicubic
/// samples on the bounding circle spaced at most `h/4` apart, so the
/// boundary maximum is not lost between nodes. Ring values within a
/// relative `1e-12` of the node sup are rounding noise and are ignored, so
/// fields that are constant on the ball keep an exact sup.
pub fn ball_sup(u: &ScalarField, x: Point, r: f64) -> Result<f64> {
    require_ball(u.grid(), x, r)?;
    let nodes = sup_norm(u, &Region::ball(x, r)?)?;
    let m = ((8.0 * PI * r / u.grid().spacing()).ceil() as usize).max(32);
    let ring = (0..m).try_fold(0.0f64, |acc, k| {
        let th = 2.0 * PI * k as f64 / m as f64;
        let p = Point::new(x.x + r * th.cos(), x.y + r * th.sin());
        sample(u, p).map(|v| acc.max(v.abs()))
    })?;
    Ok(if ring > nodes * (1.0 + 1e-12) { ring } else { nodes })
}

pub fn ball_norm(u: &ScalarField, x: Point, r: f64, norm: BallNorm) -> Result<f64> {
    match norm {
        BallNorm::Sup => ball_sup(u, x, r),
        BallNorm::L2 => {
            require_ball(u.grid(), x, r)?;
            l2_norm(u, &Region::ball(x, r)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoublingReport {
    pub center: Point,
    pub radius: f64,
    /// `log₂(sup_{2r} / sup_r)`.
    pub index: f64,
    pub sup_inner: f64,
    pub sup_outer: f64,
}

pub fn doubling_index(u: &ScalarField, x: Point, r: f64) -> Result<DoublingReport> {
    let sup_outer = ball_norm(u, x, 2.0 * r, BallNorm::Sup)?;
    let sup_inner = ball_norm(u, x, r, BallNorm::Sup)?;
    if sup_inner == 0.0 {
        return Err(LabError::DegenerateField(format!(
            "u vanishes on B_{r}({}, {})",
            x.x, x.y
        )));
    }
    Ok(DoublingReport {
        center: x,
        radius: r,
        index: (sup_outer / sup_inner).log2(),
        sup_inner,
        sup_outer,
    })
}

/// Centers on a uniform lattice over a cube and a geometric radius ladder
/// descending from `top`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePlan {
    pub centers_per_axis: usize,
    pub radii_count: usize,
    /// Ratio between consecutive radii.
    pub ratio: f64,
    /// Largest radius; `None` means the cube diameter.
    pub top: Option<f64>,
    /// Skip probes whose doubled ball leaves the grid instead of failing.
    pub skip_outside: bool,
}

impl ProbePlan {
    pub fn new(centers_per_axis: usize, radii_count: usize) -> Self {
        ProbePlan {
            centers_per_axis,
            radii_count,
            ratio: std::f64::consts::SQRT_2,
            top: None,
            skip_outside: false,
        }
    }

    pub fn with_top(mut self, top: f64) -> Self {
        self.top = Some(top);
        self
    }

    pub fn skipping(mut self) -> Self {
        self.skip_outside = true;
        self
    }

    /// Twice the centers per axis (keeping the old lattice) and twice the
    /// radii over the same span.
    pub fn refined(&self) -> Self {
        ProbePlan {
            centers_per_axis: 2 * self.centers_per_axis - 1,
            radii_count: 2 * self.radii_count - 1,
            ratio: self.ratio.sqrt(),
            ..*self
        }
    }

    pub fn centers(&self, q: &Cube) -> Vec<Point> {
        let n = self.centers_per_axis;
        if n <= 1 {
            return vec![q.center()];
        }
        let step = q.side / (n - 1) as f64;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                out.push(Point::new(q.min.x + i as f64 * step, q.min.y + j as f64 * step));
            }
        }
        out
    }

    pub fn radii(&self, q: &Cube) -> Vec<f64> {
        let top = self.top.unwrap_or_else(|| q.diam());
        (0..self.radii_count)
            .map(|j| top * self.ratio.powi(-(j as i32)))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.centers_per_axis == 0 || self.radii_count == 0 || !(self.ratio > 1.0) {
            return Err(LabError::InvalidParameter(
                "probe plan needs at least one center and radius and a ratio above 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxIndex {
    pub value: f64,
    pub argmax: DoublingReport,
    pub probes: usize,
    pub skipped: usize,
}

/// Maximal doubling index over the default plan: `centers_per_axis²`
/// centers and radii `diam Q · 2^{-j/2}`.
pub fn max_doubling_index(
    u: &ScalarField,
    q: &Cube,
    centers_per_axis: usize,
    radii_count: usize,
) -> Result<MaxIndex> {
    max_doubling_index_with(u, q, &ProbePlan::new(centers_per_axis, radii_count))
}

pub fn max_doubling_index_with(u: &ScalarField, q: &Cube, plan: &ProbePlan) -> Result<MaxIndex> {
    plan.validate()?;
    let grid = u.grid();
    let radii = plan.radii(q);
    let mut best: Option<DoublingReport> = None;
    let (mut probes, mut skipped) = (0, 0);
    for x in plan.centers(q) {
        for &r in &radii {
            if plan.skip_outside && !grid.contains_disk(x, 2.0 * r) {
                skipped += 1;
                continue;
            }
            let rep = doubling_index(u, x, r)?;
            probes += 1;
            if best.is_none_or(|b| rep.index > b.index) {
                best = Some(rep);
            }
        }
    }
    let argmax = best.ok_or_else(|| {
        LabError::InvalidRegion("no probe ball of the plan fits inside the grid".into())
    })?;
    Ok(MaxIndex {
        value: argmax.index,
        argmax,
        probes,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_index() {
        let g = Grid2D::centered(1.0, 65).unwrap();
        let u = ScalarField::constant(g, -3.0).unwrap();
        assert_eq!(doubling_index(&u, Point::ORIGIN, 0.2).unwrap().index, 0.0);
    }

    #[test]
    fn zero_inner_norm_is_degenerate() {
        let g = Grid2D::centered(1.0, 65).unwrap();
        let u = ScalarField::from_fn(g, |p| if p.norm() > 0.5 { 1.0 } else { 0.0 }).unwrap();
        assert!(matches!(
            doubling_index(&u, Point::ORIGIN, 0.3),
            Err(LabError::DegenerateField(_))
        ));
        assert!(matches!(
            doubling_index(&u, Point::new(0.8, 0.0), 0.3),
            Err(LabError::InvalidRegion(_))
        ));
    }

    #[test]
    fn refined_plan_nests() {
        let q = Cube::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let p = ProbePlan::new(9, 8);
        let r = p.refined();
        let coarse = p.centers(&q);
        let fine = r.centers(&q);
        assert!(coarse.iter().all(|c| fine.iter().any(|f| f.dist(*c) < 1e-12)));
        let rf = r.radii(&q);
        assert!((rf[rf.len() - 1] - p.radii(&q)[7]).abs() < 1e-12);
    }
}
