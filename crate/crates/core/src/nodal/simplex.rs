//! Triangle geometry, the ball-covering fact and the barycenter check.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::doubling::doubling_index;
use crate::error::{LabError, Result};
use crate::field::{Point, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexGeometry {
    pub vertices: [Point; 3],
    pub diam: f64,
    pub width: f64,
    /// `width / diam`, zero for a point.
    pub relative_width: f64,
    pub barycenter: Point,
}

pub fn simplex_metrics(vertices: [Point; 3]) -> SimplexGeometry {
    let [p, q, r] = vertices;
    let diam = p.dist(q).max(q.dist(r)).max(r.dist(p));
    // The minimal directional extent of a triangle is attained along one of
    // its edge normals.
    let width = (0..3)
        .filter_map(|k| {
            let a = vertices[k];
            let b = vertices[(k + 1) % 3];
            let e = b - a;
            let len = e.norm();
            (len > 0.0).then(|| {
                let nrm = Point::new(-e.y / len, e.x / len);
                let proj = vertices.map(|v| v.dot(nrm));
                let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
                hi - lo
            })
        })
        .fold(f64::INFINITY, f64::min);
    let width = if width.is_finite() { width } else { 0.0 };
    let relative_width = if diam > 0.0 { (width / diam).clamp(0.0, 1.0) } else { 0.0 };
    SimplexGeometry {
        vertices,
        diam,
        width,
        relative_width,
        barycenter: Point::new((p.x + q.x + r.x) / 3.0, (p.y + q.y + r.y) / 3.0),
    }
}

/// Radical inverse of `k` in base `b`.
fn radical_inverse(mut k: u64, b: u64) -> f64 {
    let (mut inv, mut f) = (0.0, 1.0 / b as f64);
    while k > 0 {
        inv += (k % b) as f64 * f;
        k /= b;
        f /= b as f64;
    }
    inv
}

/// Low-discrepancy points filling the closed disk: a Halton(2, 3) interior
/// set mapped by the area-preserving polar map, plus an equispaced ring on
/// the boundary circle.
pub fn disk_samples(center: Point, radius: f64, count: usize) -> Vec<Point> {
    let ring = (count / 16).max(64).min(count);
    let interior = count - ring;
    let mut out = Vec::with_capacity(count);
    for k in 1..=interior as u64 {
        let r = radius * radical_inverse(k, 2).sqrt();
        let th = 2.0 * PI * radical_inverse(k, 3);
        out.push(Point::new(center.x + r * th.cos(), center.y + r * th.sin()));
    }
    for k in 0..ring {
        let th = 2.0 * PI * k as f64 / ring as f64;
        out.push(Point::new(center.x + radius * th.cos(), center.y + radius * th.sin()));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub simplex: SimplexGeometry,
    pub k: f64,
    pub tau_hat: f64,
    /// `ρ = K·diam(S)`.
    pub rho: f64,
    pub samples: usize,
    pub uncovered: usize,
    /// Largest `min_i |y − xᵢ| / ρ` over the samples; covered iff ≤ 1.
    pub worst_ratio: f64,
    pub worst_point: Point,
    /// Slack `ρ/K − max_i |xᵢ − x₀|` of `B_{ρt}(xᵢ) ⊆ B_{ρt(1+1/(Kt))}(x₀)`,
    /// which does not depend on `t`.
    pub nesting_margin: f64,
    pub pass: bool,
}

/// Sampled check of `B_{ρ(1+τ̂)}(x₀) ⊆ ∪ᵢ B_ρ(xᵢ)` with `ρ = K·diam(S)`,
/// together with the exact nesting of vertex balls in barycenter balls.
pub fn simplex_covering_check(
    s: &SimplexGeometry,
    k: f64,
    tau_hat: f64,
    samples: usize,
) -> Result<CoveringReport> {
    if !(s.relative_width > 0.0) {
        return Err(LabError::InvalidParameter("covering check needs w(S) > 0".into()));
    }
    if !(k > 0.0 && tau_hat >= 0.0) || samples == 0 {
        return Err(LabError::InvalidParameter(
            "covering check needs K > 0, τ̂ ≥ 0 and at least one sample".into(),
        ));
    }
    let rho = k * s.diam;
    let pts = disk_samples(s.barycenter, rho * (1.0 + tau_hat), samples);
    let mut uncovered = 0;
    let mut worst = (0.0f64, s.barycenter);
    for y in &pts {
        let d = s
            .vertices
            .iter()
            .map(|v| v.dist(*y))
            .fold(f64::INFINITY, f64::min);
        let ratio = d / rho;
        if ratio > 1.0 {
            uncovered += 1;
        }
        if ratio > worst.0 {
            worst = (ratio, *y);
        }
    }
    let spread = s
        .vertices
        .iter()
        .map(|v| v.dist(s.barycenter))
        .fold(0.0f64, f64::max);
    let nesting_margin = rho / k - spread;
    Ok(CoveringReport {
        simplex: *s,
        k,
        tau_hat,
        rho,
        samples: pts.len(),
        uncovered,
        worst_ratio: worst.0,
        worst_point: worst.1,
        nesting_margin,
        pass: uncovered == 0 && nesting_margin >= 0.0,
    })
}

/// Random triangle with vertices uniform in `[0,1]²` and `w(S) > min_width`.
pub fn random_simplex<R: Rng>(rng: &mut R, min_width: f64) -> SimplexGeometry {
    loop {
        let v = [(); 3].map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()));
        let s = simplex_metrics(v);
        if s.relative_width > min_width {
            return s;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexLemmaParams {
    pub k: f64,
    /// Barycenter radius factor `C ≥ K`.
    pub c_big: f64,
    /// Gain `c`.
    pub c: f64,
    /// Vertex ball radius; at most `K·diam(S)/2`.
    pub r: f64,
    /// Threshold `N₀` below which the check does not apply.
    pub n0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SimplexVerdict {
    Pass,
    Fail,
    /// No strict gain but no loss either (homogeneous fields saturate).
    VacuousMargin,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexLemmaReport {
    pub simplex: SimplexGeometry,
    pub params: SimplexLemmaParams,
    pub n: f64,
    pub vertex_indices: Vec<f64>,
    /// `N(x₀, C·diam S)`.
    pub barycenter_index: Option<f64>,
    /// `N(x₀, C·diam S) − (1+c)N`.
    pub margin: Option<f64>,
    pub verdict: SimplexVerdict,
}

/// Barycenter accumulation: when every vertex ball has index above `N`,
/// the index at `x₀` over radius `C·diam S` exceeds `(1+c)N`. With
/// `n = None` the smallest vertex index is used.
pub fn simplex_lemma_check(
    u: &ScalarField,
    s: &SimplexGeometry,
    gamma: f64,
    n: Option<f64>,
    params: &SimplexLemmaParams,
) -> Result<SimplexLemmaReport> {
    let p = *params;
    let skipped = |n: f64, vi: Vec<f64>, reason: String| SimplexLemmaReport {
        simplex: *s,
        params: p,
        n,
        vertex_indices: vi,
        barycenter_index: None,
        margin: None,
        verdict: SimplexVerdict::Skipped { reason },
    };
    if !(s.relative_width > gamma) {
        return Ok(skipped(
            n.unwrap_or(f64::NAN),
            vec![],
            format!("w(S) = {} is not above γ = {gamma}", s.relative_width),
        ));
    }
    if p.r > 0.5 * p.k * s.diam * (1.0 + 1e-12) || !(p.r > 0.0) {
        return Ok(skipped(
            n.unwrap_or(f64::NAN),
            vec![],
            format!("vertex radius {} exceeds K·diam/2", p.r),
        ));
    }
    let vi = s
        .vertices
        .iter()
        .map(|&x| doubling_index(u, x, p.r).map(|d| d.index))
        .collect::<Result<Vec<_>>>()?;
    let min_vi = vi.iter().copied().fold(f64::INFINITY, f64::min);
    let n = n.unwrap_or(min_vi * (1.0 - 1e-9));
    if !(n > p.n0) {
        return Ok(skipped(n, vi, format!("N = {n} is not above N₀ = {}", p.n0)));
    }
    if !(min_vi > n) {
        return Ok(skipped(n, vi, format!("a vertex index {min_vi} is not above N = {n}")));
    }
    let nb = doubling_index(u, s.barycenter, p.c_big * s.diam)?.index;
    let margin = nb - (1.0 + p.c) * n;
    let verdict = if margin > 0.0 {
        SimplexVerdict::Pass
    } else if nb >= n {
        SimplexVerdict::VacuousMargin
    } else {
        SimplexVerdict::Fail
    };
    Ok(SimplexLemmaReport {
        simplex: *s,
        params: p,
        n,
        vertex_indices: vi,
        barycenter_index: Some(nb),
        margin: Some(margin),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metrics_examples() {
        let c = simplex_metrics([Point::ORIGIN, Point::new(1.0, 1.0), Point::new(2.0, 2.0)]);
        assert!(c.width.abs() < 1e-15 && c.relative_width.abs() < 1e-15);
        let e = simplex_metrics([
            Point::ORIGIN,
            Point::new(1.0, 0.0),
            Point::new(0.5, 3f64.sqrt() / 2.0),
        ]);
        assert!((e.diam - 1.0).abs() < 1e-15);
        assert!((e.width - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let r = simplex_metrics([Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.0, 1.0)]);
        assert!((r.barycenter.x - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.barycenter.y - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn halton_in_disk() {
        let pts = disk_samples(Point::new(1.0, 2.0), 0.5, 1000);
        assert_eq!(pts.len(), 1000);
        assert!(pts.iter().all(|p| p.dist(Point::new(1.0, 2.0)) <= 0.5 + 1e-12));
    }
}
