//! Fitted constant of the weighted Laplace estimate as τ approaches an
//! integer, for a field containing the degree-5 harmonic.

use nodal_lab::carleman::{check_carleman_laplace, Measure};
use nodal_lab::field::Point;
use nodal_lab::lab::runs::lap_car_field;

fn main() -> anyhow::Result<()> {
    let f = lap_car_field(5, 513)?;
    let mut taus = vec![5.5, 5.33, 5.1];
    taus.extend((0..5).map(|j| 5.0 + (1.0 / 3.0) * 0.5f64.powi(j)));
    for tau in taus {
        let rep = check_carleman_laplace(&f, tau, Point::ORIGIN, Measure::ScaleInvariant)?;
        println!("τ = {tau:.5}: C = {:.5} (lhs {:.3}, rhs {:.3})", rep.fitted_c, rep.lhs, rep.rhs);
    }
    Ok(())
}
