//! Recursion against its closed form and the assembled nodal bound.

use nodal_lab::nodal::{assemble_global_bound, nodal_bound_recursion};

fn main() -> anyhow::Result<()> {
    let rep = nodal_bound_recursion(1.1f64.powi(3), 1.0, 10.0, 0.1, 1.0)?;
    println!(
        "N = 1.1³, A = 10, c = 0.1: {} steps, iterated {:.1}, closed form {:.1}, agrees {}",
        rep.steps,
        rep.iterated,
        rep.closed_form,
        rep.agrees()
    );
    for (a, c) in [(2.0, 0.5), (10.0, 0.1), (20.0, 0.05)] {
        let l = assemble_global_bound(1e4, a, c, 1.0)?;
        println!("A = {a}, c = {c}: α₀ = {:.3}, β = {:.3}, bound at M = 1e4: {:.3e}", l.alpha0, l.beta, l.bound);
    }
    Ok(())
}
