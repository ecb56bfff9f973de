//! Hyperplane and bad-cube counts on a cube partition of a harmonic field.

use nodal_lab::doubling::ProbePlan;
use nodal_lab::field::{Cube, Grid2D, Point};
use nodal_lab::nodal::{bad_cube_count, hyperplane_lemma_check};
use nodal_lab::solution::{AnalyticFn, Part};

fn main() -> anyhow::Result<()> {
    let u = AnalyticFn::harmonic(5, Part::Real).sample(Grid2D::centered(1.0, 257)?)?;
    let q = Cube::centered(Point::ORIGIN, 1.0)?;
    let plan = ProbePlan::new(5, 4);
    for a in [8, 12, 16] {
        let h = hyperplane_lemma_check(&u, &q, a, None, 3.0, &plan)?;
        println!(
            "A = {a}: N(Q) = {:.3}, smallest index on the center row {:.3} vs N/2 = {:.3}, holds {}",
            h.cube_index, h.extreme, h.threshold, h.holds
        );
    }
    for a in [8, 16] {
        let b = bad_cube_count(&u, &q, a, 3.0, 0.05, &plan)?;
        println!(
            "A = {a}: {} of {} subcubes above {:.3} (limit {}), holds {}",
            b.count_above,
            b.rows.len(),
            b.threshold,
            a / 2,
            b.holds
        );
    }
    Ok(())
}
