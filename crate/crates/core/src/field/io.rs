//! Field persistence.
//!
//! NLF1 layout, little-endian: bytes 0..4 magic `NLF1`, bytes 4..8 the
//! resolution as `u32`, bytes 8..16 the extent as `f64`, then
//! `resolution²` `f64` values in row-major order (index `j·n + i`, `i`
//! along x). The origin is not stored; readers supply it or assume a grid
//! centered at zero.

use std::io::{Read, Write};
use std::path::Path;

use super::grid::{Grid2D, Point};
use super::scalar::ScalarField;
use crate::error::{LabError, Result};

pub const NLF1_MAGIC: &[u8; 4] = b"NLF1";
pub const NLF1_HEADER_LEN: usize = 16;

pub fn write_nlf1<W: Write>(field: &ScalarField, mut w: W) -> Result<()> {
    let g = field.grid();
    let n = u32::try_from(g.resolution())
        .map_err(|_| LabError::Format("resolution exceeds u32".into()))?;
    let mut buf = Vec::with_capacity(NLF1_HEADER_LEN + 8 * g.node_count());
    buf.extend_from_slice(NLF1_MAGIC);
    buf.extend_from_slice(&n.to_le_bytes());
    buf.extend_from_slice(&g.extent().to_le_bytes());
    for v in field.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Read an NLF1 stream. With `origin = None` the grid is centered at zero.
pub fn read_nlf1<R: Read>(mut r: R, origin: Option<Point>) -> Result<ScalarField> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() < NLF1_HEADER_LEN || &bytes[0..4] != NLF1_MAGIC {
        return Err(LabError::Format("missing NLF1 header".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    let extent = f64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes"));
    let body = &bytes[NLF1_HEADER_LEN..];
    if body.len() != 8 * n * n {
        return Err(LabError::Format(format!(
            "expected {} value bytes for resolution {n}, found {}",
            8 * n * n,
            body.len()
        )));
    }
    let origin = origin.unwrap_or(Point::new(-0.5 * extent, -0.5 * extent));
    let grid = Grid2D::new(origin, extent, n)?;
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    ScalarField::new(grid, values)
}

pub fn save_nlf1(field: &ScalarField, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_nlf1(field, std::io::BufWriter::new(f))
}

pub fn load_nlf1(path: &Path, origin: Option<Point>) -> Result<ScalarField> {
    let f = std::fs::File::open(path)?;
    read_nlf1(std::io::BufReader::new(f), origin)
}

/// CSV with header `x,y,value`, one row per node in storage order.
pub fn write_csv<W: Write>(field: &ScalarField, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "y", "value"])?;
    let g = field.grid();
    let n = g.resolution();
    for j in 0..n {
        for i in 0..n {
            let p = g.node(i, j);
            out.serialize((p.x, p.y, field.at(i, j)))?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Read `x,y,value` rows written by [`write_csv`]. The grid is recovered
/// from the coordinate bounds; rows may come in any order.
pub fn read_csv<R: Read>(r: R) -> Result<ScalarField> {
    let mut rd = csv::Reader::from_reader(r);
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for rec in rd.deserialize() {
        rows.push(rec?);
    }
    let count = rows.len();
    let n = (count as f64).sqrt().round() as usize;
    if n * n != count || n < 3 {
        return Err(LabError::Format(format!("{count} rows do not form a square grid")));
    }
    let (mut x0, mut y0, mut x1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y, _) in &rows {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
    }
    let grid = Grid2D::new(Point::new(x0, y0), x1 - x0, n)?;
    let h = grid.spacing();
    let mut values = vec![f64::NAN; count];
    for &(x, y, v) in &rows {
        let i = ((x - x0) / h).round() as usize;
        let j = ((y - y0) / h).round() as usize;
        if i >= n || j >= n {
            return Err(LabError::Format(format!("node ({x}, {y}) is off the grid")));
        }
        values[grid.index(i, j)] = v;
    }
    ScalarField::new(grid, values)
}
