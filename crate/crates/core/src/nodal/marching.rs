//! Marching squares on the zero level set.
//!
//! Only cells whose closure lies in the open cube are contoured, so zero
//! lines on `∂Q` never contribute. Crossings are interpolated linearly on
//! each edge from the lower-index node, which makes shared edges produce
//! bit-identical points in both neighbouring cells.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::field::{Cube, Point, ScalarField};

/// Relative size of the nudge applied to exact-zero nodes.
pub const ZERO_NUDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleRule {
    /// Corners 0 and 2 are joined when the cell average has their sign; an
    /// average of exactly zero counts as matching corner 0.
    CellAverage,
}

/// Grid edge carrying a crossing: horizontal edges join `(i, j)` and
/// `(i + 1, j)`, vertical edges join `(i, j)` and `(i, j + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKey {
    H(usize, usize),
    V(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub edges: [EdgeKey; 2],
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalSet {
    pub segments: Vec<Segment>,
    pub total_length: f64,
    pub cube: Cube,
    pub saddle_rule: SaddleRule,
    pub cells: usize,
    pub saddles: usize,
    /// Nodes whose exact zero value was nudged to `+ZERO_NUDGE·‖u‖_∞`.
    pub nudged: usize,
}

pub fn hausdorff_length(nodal: &NodalSet) -> f64 {
    segments_length(&nodal.segments)
}

pub fn segments_length(segments: &[Segment]) -> f64 {
    segments.iter().map(Segment::length).sum()
}

/// Index range of nodes strictly inside `(a, b)` along one axis.
fn open_range(origin: f64, h: f64, n: usize, a: f64, b: f64) -> Option<(usize, usize)> {
    let eps = 1e-6;
    let lo = ((a - origin) / h + eps).ceil().max(0.0);
    let hi = ((b - origin) / h - eps).floor().min((n - 1) as f64);
    (lo < hi).then_some((lo as usize, hi as usize))
}

pub fn extract_nodal_set(u: &ScalarField, q: &Cube) -> Result<NodalSet> {
    let g = *u.grid();
    let t = 1e-9 * g.spacing();
    let hi = q.max();
    let (o, gmax) = (g.origin(), g.max_corner());
    if q.min.x < o.x - t || q.min.y < o.y - t || hi.x > gmax.x + t || hi.y > gmax.y + t {
        return Err(LabError::InvalidRegion("cube leaves the grid".into()));
    }
    let (n, h) = (g.resolution(), g.spacing());
    let empty = NodalSet {
        segments: Vec::new(),
        total_length: 0.0,
        cube: *q,
        saddle_rule: SaddleRule::CellAverage,
        cells: 0,
        saddles: 0,
        nudged: 0,
    };
    let (Some((i0, i1)), Some((j0, j1))) = (
        open_range(o.x, h, n, q.min.x, hi.x),
        open_range(o.y, h, n, q.min.y, hi.y),
    ) else {
        return Err(LabError::RegionEmpty);
    };

    let w = i1 - i0 + 1;
    let mut vals = Vec::with_capacity(w * (j1 - j0 + 1));
    for j in j0..=j1 {
        for i in i0..=i1 {
            vals.push(u.at(i, j));
        }
    }
    let sup = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sup == 0.0 {
        return Err(LabError::DegenerateField("u vanishes on the cube".into()));
    }
    let mut nudged = 0;
    for v in vals.iter_mut() {
        if *v == 0.0 {
            *v = ZERO_NUDGE * sup;
            nudged += 1;
        }
    }
    let val = |i: usize, j: usize| vals[(j - j0) * w + (i - i0)];

    let crossing = |e: EdgeKey| -> Point {
        let (i, j, di, dj) = match e {
            EdgeKey::H(i, j) => (i, j, 1, 0),
            EdgeKey::V(i, j) => (i, j, 0, 1),
        };
        let (v0, v1) = (val(i, j), val(i + di, j + dj));
        let s = v0 / (v0 - v1);
        let p = g.node(i, j);
        Point::new(p.x + s * h * di as f64, p.y + s * h * dj as f64)
    };

    let mut segments = Vec::new();
    let mut saddles = 0;
    let mut cells = 0;
    for j in j0..j1 {
        for i in i0..i1 {
            cells += 1;
            let c = [val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)];
            let pos = c.map(|v| v > 0.0);
            // Edge k joins corner k and corner k + 1.
            let edges = [
                EdgeKey::H(i, j),
                EdgeKey::V(i + 1, j),
                EdgeKey::H(i, j + 1),
                EdgeKey::V(i, j),
            ];
            let cut: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
            let mut push = |a: usize, b: usize| {
                segments.push(Segment {
                    a: crossing(edges[a]),
                    b: crossing(edges[b]),
                    edges: [edges[a], edges[b]],
                });
            };
            match cut.len() {
                0 => {}
                2 => push(cut[0], cut[1]),
                4 => {
                    saddles += 1;
                    let avg = 0.25 * (c[0] + c[1] + c[2] + c[3]);
                    let joins_02 = avg == 0.0 || (avg > 0.0) == pos[0];
                    if joins_02 {
                        push(0, 1);
                        push(2, 3);
                    } else {
                        push(3, 0);
                        push(1, 2);
                    }
                }
                _ => unreachable!("sign changes around a cell come in pairs"),
            }
        }
    }
    let total_length = segments_length(&segments);
    Ok(NodalSet {
        segments,
        total_length,
        cells,
        saddles,
        nudged,
        ..empty
    })
}

impl NodalSet {
    /// Chain segments through shared edges into polylines. Closed loops
    /// repeat their first point at the end.
    pub fn polylines(&self) -> Vec<Vec<Point>> {
        let mut at: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
        for (k, s) in self.segments.iter().enumerate() {
            for e in s.edges {
                at.entry(e).or_default().push(k);
            }
        }
        let mut used = vec![false; self.segments.len()];
        let point = |k: usize, e: EdgeKey| {
            let s = &self.segments[k];
            if s.edges[0] == e {
                s.a
            } else {
                s.b
            }
        };
        let other = |k: usize, e: EdgeKey| {
            let s = &self.segments[k];
            if s.edges[0] == e {
                s.edges[1]
            } else {
                s.edges[0]
            }
        };
        let next = |used: &[bool], e: EdgeKey| {
            at.get(&e)
                .and_then(|v| v.iter().copied().find(|&k| !used[k]))
        };
        // Open chains start at edges touched once; loops are picked up after.
        let mut starts: Vec<(usize, EdgeKey)> = Vec::new();
        for (k, s) in self.segments.iter().enumerate() {
            for e in s.edges {
                if at[&e].len() == 1 {
                    starts.push((k, e));
                }
            }
        }
        starts.extend(
            (0..self.segments.len()).map(|k| (k, self.segments[k].edges[0])),
        );
        let mut out = Vec::new();
        for (k0, e0) in starts {
            if used[k0] {
                continue;
            }
            let mut line = vec![point(k0, e0)];
            let (mut k, mut e) = (k0, e0);
            loop {
                used[k] = true;
                let e_next = other(k, e);
                line.push(point(k, e_next));
                match next(&used, e_next) {
                    Some(k_next) => {
                        k = k_next;
                        e = e_next;
                    }
                    None => break,
                }
            }
            out.push(line);
        }
        out
    }

    /// Segment list with header `x1,y1,x2,y2`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["x1", "y1", "x2", "y2"])?;
        for s in &self.segments {
            wtr.serialize((s.a.x, s.a.y, s.b.x, s.b.y))?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Plot-ready polylines as `[[x, y], ...]` arrays.
    pub fn polyline_json(&self) -> serde_json::Value {
        let lines: Vec<Vec<[f64; 2]>> = self
            .polylines()
            .into_iter()
            .map(|l| l.into_iter().map(|p| [p.x, p.y]).collect())
            .collect();
        serde_json::json!({
            "cube": self.cube,
            "total_length": self.total_length,
            "saddle_rule": self.saddle_rule,
            "polylines": lines,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid2D;

    #[test]
    fn empty_and_unit_lengths() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let u = ScalarField::constant(g, 2.0).unwrap();
        let q = Cube::centered(Point::ORIGIN, 2.0).unwrap();
        let nodal = extract_nodal_set(&u, &q).unwrap();
        assert_eq!(hausdorff_length(&nodal), 0.0);
        let seg = |a: Point, b: Point| Segment {
            a,
            b,
            edges: [EdgeKey::H(0, 0), EdgeKey::H(1, 0)],
        };
        let two = [
            seg(Point::ORIGIN, Point::new(1.0, 0.0)),
            seg(Point::ORIGIN, Point::new(0.0, 1.0)),
        ];
        assert_eq!(segments_length(&two), 2.0);
    }

    #[test]
    fn zero_field_is_degenerate() {
        let g = Grid2D::centered(1.0, 9).unwrap();
        let q = Cube::centered(Point::ORIGIN, 2.0).unwrap();
        assert!(matches!(
            extract_nodal_set(&ScalarField::zeros(g), &q),
            Err(LabError::DegenerateField(_))
        ));
    }

    #[test]
    fn circle_polyline_closes() {
        let g = Grid2D::centered(1.0, 65).unwrap();
        let u = ScalarField::from_fn(g, |p| p.norm() - 0.5).unwrap();
        let q = Cube::centered(Point::ORIGIN, 2.0).unwrap();
        let nodal = extract_nodal_set(&u, &q).unwrap();
        let lines = nodal.polylines();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].first(), lines[0].last());
        assert!((nodal.total_length - std::f64::consts::PI).abs() < 0.01);
    }
}
