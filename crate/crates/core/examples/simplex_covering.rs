//! Sampled ball covering around random wide simplices.

use nodal_lab::field::Point;
use nodal_lab::nodal::{random_simplex, simplex_covering_check, simplex_metrics};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 3f64.sqrt() / 2.0;
    let equilateral = simplex_metrics([Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, h)]);
    let rep = simplex_covering_check(&equilateral, 4.0, 0.05, 20_000)?;
    println!("equilateral: worst ratio {:.4}, pass {}", rep.worst_ratio, rep.pass);
    for i in 0..5 {
        let s = random_simplex(&mut rng, 0.3);
        let rep = simplex_covering_check(&s, 4.0, 0.05, 20_000)?;
        println!(
            "simplex {i}: w = {:.3}, worst ratio {:.4}, {} uncovered, pass {}",
            s.relative_width, rep.worst_ratio, rep.uncovered, rep.pass
        );
    }
    Ok(())
}
