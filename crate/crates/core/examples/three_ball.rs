//! Three-ball interpolation constant and its θ ladder.

use nodal_lab::doubling::{check_three_ball, theta_ladder, BallNorm, ThreeBallParams};
use nodal_lab::field::{Grid2D, Point};
use nodal_lab::solution::{AnalyticFn, Part};

fn main() -> anyhow::Result<()> {
    let p = ThreeBallParams {
        r: 0.1,
        t: 4.0,
        delta: 0.05,
        eps: 0.1,
        norm: BallNorm::L2,
    };
    for res in [129, 257, 513] {
        let u = AnalyticFn::harmonic(3, Part::Real).sample(Grid2D::centered(1.0, res)?)?;
        let rec = check_three_ball(&u, Point::new(0.1, 0.05), &p)?;
        println!("res {res}: θ = {:.4}, C = {:.5}", rec.exponents.theta, rec.constant);
    }
    let deltas = [0.2, 0.1, 0.05, 0.02, 0.01];
    for (d, theta) in deltas.iter().zip(theta_ladder(p.r, p.t, p.eps, &deltas)?) {
        println!("δ = {d}: θ = {theta:.4}");
    }
    Ok(())
}
