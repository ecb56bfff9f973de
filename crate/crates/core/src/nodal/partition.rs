//! Cube partitions and the two counting checks built on them.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::doubling::{max_doubling_index_with, ProbePlan};
use crate::error::{LabError, Result};
use crate::field::{Cube, Point, ScalarField};

/// Row-major tiling of `q` into `per_axis²` equal subcubes.
pub fn partition(q: &Cube, per_axis: usize) -> Result<Vec<Cube>> {
    if per_axis < 2 {
        return Err(LabError::InvalidParameter(format!(
            "partition needs at least 2 subcubes per axis (got {per_axis})"
        )));
    }
    let s = q.side / per_axis as f64;
    let mut out = Vec::with_capacity(per_axis * per_axis);
    for j in 0..per_axis {
        for i in 0..per_axis {
            let min = Point::new(q.min.x + i as f64 * s, q.min.y + j as f64 * s);
            out.push(Cube::new(min, s)?);
        }
    }
    Ok(out)
}

/// Which partition a report uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `(2A+1)²` subcubes; only the row meeting the horizontal center line
    /// is reported.
    Hyperplane,
    /// `A²` subcubes, all evaluated.
    BadCube,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubcubeRow {
    pub i: usize,
    pub j: usize,
    pub cube: Cube,
    pub index: f64,
    pub above: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub scheme: Scheme,
    pub cube: Cube,
    pub a: usize,
    pub per_axis: usize,
    /// Measured `N(Q)`.
    pub cube_index: f64,
    /// Hyperplane: `N/2`. Bad cube: `max(N(Q)/(1+c), N₀)`.
    pub threshold: f64,
    pub rows: Vec<SubcubeRow>,
    pub count_above: usize,
    pub count_below: usize,
    /// Hyperplane: smallest row index. Bad cube: largest index.
    pub extreme: f64,
    /// `N(Q) ≤ N` held.
    pub precondition: bool,
    /// Hyperplane: `N > N₀` (the claim is only made for large `N`).
    pub applicable: bool,
    /// The claimed inequality held on this run.
    pub holds: bool,
}

impl PartitionReport {
    /// One line per evaluated subcube.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["i", "j", "x0", "y0", "side", "index", "above_threshold"])?;
        for r in &self.rows {
            wtr.serialize((r.i, r.j, r.cube.min.x, r.cube.min.y, r.cube.side, r.index, r.above))?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn subcube_indices(
    u: &ScalarField,
    cells: &[(usize, usize, Cube)],
    plan: &ProbePlan,
) -> Result<Vec<(usize, usize, Cube, f64)>> {
    let plan = plan.skipping();
    cells
        .par_iter()
        .map(|&(i, j, c)| {
            let top = plan.top.map(|t| t.min(c.diam())).unwrap_or(c.diam());
            max_doubling_index_with(u, &c, &plan.with_top(top)).map(|m| (i, j, c, m.value))
        })
        .collect()
}

fn cells_of(q: &Cube, per_axis: usize) -> Result<Vec<(usize, usize, Cube)>> {
    Ok(partition(q, per_axis)?
        .into_iter()
        .enumerate()
        .map(|(k, cube)| (k % per_axis, k / per_axis, cube))
        .collect())
}

/// `N(Q)` as the larger of the coarse-plan maximum on `Q` and every
/// subcube maximum, so that `N(q) ≤ N(Q)` holds for the probes used.
fn cube_index(u: &ScalarField, q: &Cube, plan: &ProbePlan, subs: &[(usize, usize, Cube, f64)]) -> Result<f64> {
    let coarse = max_doubling_index_with(u, q, &plan.skipping())?.value;
    Ok(subs.iter().map(|s| s.3).fold(coarse, f64::max))
}

/// Hyperplane check: among the subcubes of the `(2A+1)²` partition that
/// meet `{x₂ = center}`, some index is at most `N/2`. With `n = None` the
/// measured `N(Q)` is used. The claim is made only for `N > N₀`.
pub fn hyperplane_lemma_check(
    u: &ScalarField,
    q: &Cube,
    a: usize,
    n: Option<f64>,
    n0: f64,
    plan: &ProbePlan,
) -> Result<PartitionReport> {
    if a < 1 {
        return Err(LabError::InvalidParameter("A must be at least 1".into()));
    }
    let per_axis = 2 * a + 1;
    let all = subcube_indices(u, &cells_of(q, per_axis)?, plan)?;
    let cube_index = cube_index(u, q, plan, &all)?;
    let n = n.unwrap_or(cube_index);
    let threshold = 0.5 * n;
    // The middle row of an odd partition straddles the center line.
    let rows: Vec<SubcubeRow> = all
        .into_iter()
        .filter(|s| s.1 == a)
        .map(|(i, j, cube, index)| SubcubeRow {
            i,
            j,
            cube,
            index,
            above: index > threshold,
        })
        .collect();
    let count_above = rows.iter().filter(|r| r.above).count();
    let extreme = rows.iter().map(|r| r.index).fold(f64::INFINITY, f64::min);
    let precondition = cube_index <= n + 1e-12;
    let applicable = precondition && n > n0;
    Ok(PartitionReport {
        scheme: Scheme::Hyperplane,
        cube: *q,
        a,
        per_axis,
        cube_index,
        threshold,
        count_below: rows.len() - count_above,
        count_above,
        extreme,
        precondition,
        applicable,
        holds: extreme <= threshold,
        rows,
    })
}

/// Bad-cube count on the `A²` partition: subcubes with index above
/// `max(N(Q)/(1+c), N₀)`, compared with `A/2`.
pub fn bad_cube_count(
    u: &ScalarField,
    q: &Cube,
    a: usize,
    n0: f64,
    c: f64,
    plan: &ProbePlan,
) -> Result<PartitionReport> {
    if a < 2 {
        return Err(LabError::InvalidParameter(format!("A must be at least 2 (got {a})")));
    }
    if !(c > 0.0) {
        return Err(LabError::InvalidParameter(format!("c must be positive (got {c})")));
    }
    let all = subcube_indices(u, &cells_of(q, a)?, plan)?;
    let cube_index = cube_index(u, q, plan, &all)?;
    let threshold = (cube_index / (1.0 + c)).max(n0);
    let rows: Vec<SubcubeRow> = all
        .into_iter()
        .map(|(i, j, cube, index)| SubcubeRow {
            i,
            j,
            cube,
            index,
            above: index > threshold,
        })
        .collect();
    let count_above = rows.iter().filter(|r| r.above).count();
    let extreme = rows.iter().map(|r| r.index).fold(f64::NEG_INFINITY, f64::max);
    Ok(PartitionReport {
        scheme: Scheme::BadCube,
        cube: *q,
        a,
        per_axis: a,
        cube_index,
        threshold,
        count_below: rows.len() - count_above,
        count_above,
        extreme,
        precondition: true,
        applicable: true,
        holds: count_above as f64 <= 0.5 * a as f64,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiling_counts() {
        let q = Cube::new(Point::ORIGIN, 1.0).unwrap();
        let subs = partition(&q, 4).unwrap();
        assert_eq!(subs.len(), 16);
        assert!(subs.iter().all(|c| c.side == 0.25));
        assert_eq!(subs.iter().map(Cube::area).sum::<f64>(), 1.0);
        assert_eq!(partition(&q, 9).unwrap().len(), 81);
        assert!(partition(&q, 1).is_err());
    }
}
