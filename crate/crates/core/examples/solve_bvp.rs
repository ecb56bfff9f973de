//! Solve one seeded corpus member and write its field as NLF1.
//!
//! cargo run --release --example solve_bvp -- [seed] [resolution] [out.nlf1]

use nodal_lab::field::io::save_nlf1;
use nodal_lab::lab::corpus::seeded_member;
use nodal_lab::solution::{materialize, SolveOptions};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(Ok(20240601), |s| s.parse())?;
    let res: usize = args.next().map_or(Ok(129), |s| s.parse())?;
    let out = args.next().unwrap_or_else(|| format!("bvp-{seed}.nlf1"));

    let member = seeded_member(seed, res);
    println!("{}", member.spec.to_json()?);
    let sol = materialize(&member.spec, &SolveOptions::default())?;
    let rep = sol.report.as_ref().expect("seeded members are solved");
    println!(
        "{}: {} iterations, linear residual {:.2e}, pde residual {:.2e}, ‖W‖ {:.4}, contraction {:.3}",
        member.id, rep.iterations, rep.linear_residual, rep.pde_residual, sol.m, rep.contraction
    );
    save_nlf1(&sol.u, out.as_ref())?;
    println!("wrote {out}");
    Ok(())
}
