//! Marching-squares nodal length of Re z³ against its closed form, with
//! the polylines written as JSON.
//!
//! cargo run --release --example nodal_length -- [resolution] [out.json]

use nodal_lab::field::{Cube, Grid2D, Point};
use nodal_lab::lab::runs::cubic_nodal_length;
use nodal_lab::nodal::extract_nodal_set;
use nodal_lab::solution::{AnalyticFn, Part};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let res: usize = args.next().map_or(Ok(257), |s| s.parse())?;
    let out = args.next().unwrap_or_else(|| "cubic_polylines.json".into());

    let u = AnalyticFn::harmonic(3, Part::Real).sample(Grid2D::centered(1.0, res)?)?;
    let set = extract_nodal_set(&u, &Cube::centered(Point::ORIGIN, 2.0)?)?;
    let oracle = cubic_nodal_length();
    println!(
        "res {res}: length {:.5}, oracle {oracle:.5}, error {:.2e}, {} segments, {} saddles",
        set.total_length,
        (set.total_length - oracle).abs(),
        set.segments.len(),
        set.saddles
    );
    std::fs::write(&out, serde_json::to_vec_pretty(&set.polyline_json())?)?;
    println!("wrote {out}");
    Ok(())
}
