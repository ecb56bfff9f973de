//! Doubling indices of homogeneous harmonics and one almost-monotonicity
//! record on the seeded corpus.

use nodal_lab::doubling::{check_monotonicity, doubling_index, max_doubling_index_with, ProbePlan};
use nodal_lab::field::{Cube, Grid2D, Point};
use nodal_lab::lab::corpus::seeded_member;
use nodal_lab::solution::{materialize, AnalyticFn, Part, SolveOptions};

fn main() -> anyhow::Result<()> {
    let grid = Grid2D::centered(1.0, 257)?;
    for k in 1..=6 {
        let u = AnalyticFn::harmonic(k, Part::Real).sample(grid)?;
        let n: Vec<String> = [0.05, 0.1, 0.2]
            .iter()
            .map(|&r| doubling_index(&u, Point::ORIGIN, r).map(|d| format!("{:.4}", d.index)))
            .collect::<Result<_, _>>()?;
        println!("Re z^{k}: N(0, r) for r = 0.05, 0.1, 0.2: {}", n.join(" "));
    }

    let sol = materialize(&seeded_member(20240601, 129).spec, &SolveOptions::default())?;
    let q = Cube::centered(Point::ORIGIN, 1.0)?;
    let max = max_doubling_index_with(&sol.u, &q, &ProbePlan::new(5, 4).with_top(0.25).skipping())?;
    println!(
        "bvp-20240601: N(Q) = {:.4} at ({:.2}, {:.2}), r = {:.3}, {} probes",
        max.value, max.argmax.center.x, max.argmax.center.y, max.argmax.radius, max.probes
    );
    let rec = check_monotonicity(&sol.u, Point::new(0.1, -0.1), 0.05, 4.0, 0.1)?;
    println!(
        "growth ratio {:.4} over [R, 4R]: constant-free margins {:.4} / {:.4}, C needed {:.4}",
        rec.ratio,
        rec.lower_margin(),
        rec.upper_margin(),
        rec.c_lo.max(rec.c_hi)
    );
    Ok(())
}
