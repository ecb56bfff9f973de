use serde::{Deserialize, Serialize};

use super::grid::{Grid2D, Point};
use super::scalar::ScalarField;
use crate::error::{LabError, Result};

/// C⁴ transition `p(s) = s⁵(126 − 420s + 540s² − 315s³ + 70s⁴)`, with
/// `p(0) = 0`, `p(1) = 1` and derivatives up to order four vanishing at
/// both ends.
pub fn ramp(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        s.powi(5) * (126.0 + s * (-420.0 + s * (540.0 + s * (-315.0 + 70.0 * s))))
    }
}

/// k-th derivative of [`ramp`] on `[0, 1]`, `k ≤ 4`.
pub fn ramp_derivative(s: f64, k: usize) -> f64 {
    if !(0.0..=1.0).contains(&s) {
        return 0.0;
    }
    // Coefficients of s^5..s^9.
    let mut c = [126.0, -420.0, 540.0, -315.0, 70.0];
    let mut pow = [5.0_f64, 6.0, 7.0, 8.0, 9.0];
    for _ in 0..k {
        for m in 0..5 {
            c[m] *= pow[m];
            pow[m] -= 1.0;
        }
    }
    c.iter().zip(&pow).map(|(a, &e)| a * s.powf(e)).sum()
}

/// Maximum of `|p^{(k)}|` on `[0, 1]` for `k = 1..=4`. The first entry is
/// the closed form `630/256`, reached at `s = 1/2`, since
/// `p′(s) = 630 s⁴(1 − s)⁴`.
pub fn ramp_derivative_bounds() -> [f64; 4] {
    let mut out = [630.0 / 256.0, 0.0, 0.0, 0.0];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let n = 20_000;
        *slot = (0..=n)
            .map(|m| ramp_derivative(m as f64 / n as f64, k + 1).abs())
            .fold(0.0, f64::max);
    }
    out
}

/// Radial cutoff: zero inside `plateau.0 - inner_ramp`, rising through the
/// inner ramp, equal to one on the plateau, falling through the outer ramp
/// and zero beyond `plateau.1 + outer_ramp`. A zero inner plateau radius with
/// zero inner ramp gives a disk cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpProfile {
    pub center: Point,
    pub plateau: (f64, f64),
    pub inner_ramp: f64,
    pub outer_ramp: f64,
}

impl BumpProfile {
    /// Annular profile with equal ramps.
    pub fn annular(center: Point, plateau: (f64, f64), ramp_width: f64) -> Result<Self> {
        BumpProfile::new(center, plateau, ramp_width, ramp_width)
    }

    /// Disk profile: one on `|x - center| ≤ radius`.
    pub fn disk(center: Point, radius: f64, ramp_width: f64) -> Result<Self> {
        BumpProfile::new(center, (0.0, radius), 0.0, ramp_width)
    }

    pub fn new(center: Point, plateau: (f64, f64), inner_ramp: f64, outer_ramp: f64) -> Result<Self> {
        let (a, b) = plateau;
        let bad = |m: &str| Err(LabError::InvalidParameter(format!("bump profile: {m}")));
        if !(a >= 0.0 && b > a) {
            return bad("plateau must satisfy 0 ≤ inner < outer");
        }
        if !(outer_ramp > 0.0 && inner_ramp >= 0.0) {
            return bad("ramp widths must be positive");
        }
        if a > 0.0 && inner_ramp == 0.0 {
            return bad("an annular plateau needs an inner ramp");
        }
        if a - inner_ramp < 0.0 {
            return bad("inner ramp extends past the center");
        }
        Ok(BumpProfile {
            center,
            plateau,
            inner_ramp,
            outer_ramp,
        })
    }

    /// Radius below which the cutoff vanishes (zero for disk profiles).
    pub fn inner_zero(&self) -> f64 {
        self.plateau.0 - self.inner_ramp
    }

    /// Radius beyond which the cutoff vanishes.
    pub fn support_radius(&self) -> f64 {
        self.plateau.1 + self.outer_ramp
    }

    /// Narrowest ramp, the `δR` of the derivative bounds.
    pub fn min_ramp(&self) -> f64 {
        if self.inner_ramp > 0.0 {
            self.inner_ramp.min(self.outer_ramp)
        } else {
            self.outer_ramp
        }
    }

    /// Profile value at distance `r` from the center.
    pub fn value(&self, r: f64) -> f64 {
        let (a, b) = self.plateau;
        if self.inner_ramp > 0.0 && r < a {
            return ramp((r - self.inner_zero()) / self.inner_ramp);
        }
        if r <= b {
            return 1.0;
        }
        ramp((self.support_radius() - r) / self.outer_ramp)
    }

    /// Recorded constants `C_k` with `|η^{(k)}(r)| ≤ C_k / δR^k`.
    pub fn derivative_constants(&self) -> [f64; 4] {
        ramp_derivative_bounds()
    }
}

/// Sample the profile on `grid`.
pub fn make_bump(profile: &BumpProfile, grid: &Grid2D) -> Result<ScalarField> {
    let min = 4.0 * grid.spacing();
    if profile.min_ramp() < min * (1.0 - 1e-12) {
        return Err(LabError::UnderResolvedRamp {
            width: profile.min_ramp(),
            min,
        });
    }
    if !grid.contains_disk(profile.center, profile.support_radius()) {
        return Err(LabError::BumpOutsideGrid);
    }
    ScalarField::from_fn(*grid, |p| profile.value(p.dist(profile.center)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), 0.0);
        assert_eq!(ramp(1.0), 1.0);
        assert_eq!(ramp(0.5), 0.5);
        let exact_at_one: f64 = 126.0 - 420.0 + 540.0 - 315.0 + 70.0;
        assert_eq!(exact_at_one, 1.0);
    }

    #[test]
    fn ramp_derivative_matches_closed_form() {
        for k in 0..=10 {
            let s = k as f64 / 10.0;
            let closed = 630.0 * s.powi(4) * (1.0 - s).powi(4);
            assert!((ramp_derivative(s, 1) - closed).abs() < 1e-9);
        }
        for k in 1..=4 {
            assert!(ramp_derivative(0.0, k).abs() < 1e-12);
            assert!(ramp_derivative(1.0, k).abs() < 1e-9);
        }
    }

    #[test]
    fn profile_plateau_and_support() {
        let p = BumpProfile::annular(Point::ORIGIN, (0.3, 0.6), 0.1).unwrap();
        assert_eq!(p.value(0.45), 1.0);
        assert_eq!(p.value(0.75), 0.0);
        assert_eq!(p.value(0.15), 0.0);
        assert!((p.value(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn under_resolved_ramp() {
        let g = Grid2D::centered(1.0, 33).unwrap();
        let p = BumpProfile::annular(Point::ORIGIN, (0.3, 0.6), 0.1).unwrap();
        assert!(matches!(
            make_bump(&p, &g),
            Err(LabError::UnderResolvedRamp { .. })
        ));
    }
}
