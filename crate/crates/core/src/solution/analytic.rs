use serde::{Deserialize, Serialize};

use crate::field::{Grid2D, Point, ScalarField};
use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Real,
    Imaginary,
}

/// Closed-form functions with known Laplacian and constant bi-Laplace
/// potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AnalyticFn {
    /// `Re` or `Im` of `(z - center)^k`; harmonic.
    HarmonicPolynomial {
        k: u32,
        part: Part,
        #[serde(default = "origin")]
        center: Point,
    },
    /// `sin(a x₁) sin(b x₂)`; `Δu = -(a² + b²) u`.
    SineProduct { a: f64, b: f64 },
    /// `exp(μ·x)`; `Δu = |μ|² u`.
    Exponential { mu: [f64; 2] },
    Constant { value: f64 },
}

fn origin() -> Point {
    Point::ORIGIN
}

/// `(x + iy)^k` by repeated multiplication.
pub fn complex_pow(x: f64, y: f64, k: u32) -> (f64, f64) {
    let (mut re, mut im) = (1.0, 0.0);
    for _ in 0..k {
        let r = re * x - im * y;
        im = re * y + im * x;
        re = r;
    }
    (re, im)
}

impl AnalyticFn {
    pub fn harmonic(k: u32, part: Part) -> Self {
        AnalyticFn::HarmonicPolynomial {
            k,
            part,
            center: Point::ORIGIN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AnalyticFn::HarmonicPolynomial { k, .. } if !(1..=8).contains(&k) => {
                Err(LabError::InvalidSpec(format!("harmonic degree {k} outside 1..=8")))
            }
            AnalyticFn::SineProduct { a, b } if !(a > 0.0 && b > 0.0) => {
                Err(LabError::InvalidSpec(format!("sine frequencies ({a}, {b}) must be positive")))
            }
            AnalyticFn::Exponential { mu } if !(mu[0].is_finite() && mu[1].is_finite()) => {
                Err(LabError::InvalidSpec("exponential rate must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, p: Point) -> f64 {
        match *self {
            AnalyticFn::HarmonicPolynomial { k, part, center } => {
                let (re, im) = complex_pow(p.x - center.x, p.y - center.y, k);
                match part {
                    Part::Real => re,
                    Part::Imaginary => im,
                }
            }
            AnalyticFn::SineProduct { a, b } => (a * p.x).sin() * (b * p.y).sin(),
            AnalyticFn::Exponential { mu } => (mu[0] * p.x + mu[1] * p.y).exp(),
            AnalyticFn::Constant { value } => value,
        }
    }

    pub fn laplacian(&self, p: Point) -> f64 {
        match *self {
            AnalyticFn::HarmonicPolynomial { .. } | AnalyticFn::Constant { .. } => 0.0,
            AnalyticFn::SineProduct { a, b } => -(a * a + b * b) * self.eval(p),
            AnalyticFn::Exponential { mu } => (mu[0] * mu[0] + mu[1] * mu[1]) * self.eval(p),
        }
    }

    /// Constant `W` with `Δ²u = W u`.
    pub fn potential(&self) -> f64 {
        match *self {
            AnalyticFn::HarmonicPolynomial { .. } | AnalyticFn::Constant { .. } => 0.0,
            AnalyticFn::SineProduct { a, b } => (a * a + b * b).powi(2),
            AnalyticFn::Exponential { mu } => (mu[0] * mu[0] + mu[1] * mu[1]).powi(2),
        }
    }

    pub fn sample(&self, grid: Grid2D) -> Result<ScalarField> {
        ScalarField::from_fn(grid, |p| self.eval(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_real_part() {
        let f = AnalyticFn::harmonic(3, Part::Real);
        let p = Point::new(0.3, -0.7);
        let expect = p.x.powi(3) - 3.0 * p.x * p.y * p.y;
        assert!((f.eval(p) - expect).abs() < 1e-15);
        assert_eq!(f.potential(), 0.0);
    }

    #[test]
    fn sine_potential() {
        let pi = std::f64::consts::PI;
        let f = AnalyticFn::SineProduct { a: pi, b: pi };
        assert!((f.potential() - 4.0 * pi.powi(4)).abs() < 1e-10);
        assert!((f.potential() - 389.636).abs() < 1e-3);
    }

    #[test]
    fn degree_range() {
        assert!(AnalyticFn::harmonic(9, Part::Real).validate().is_err());
        assert!(AnalyticFn::harmonic(0, Part::Real).validate().is_err());
        assert!(AnalyticFn::SineProduct { a: 0.0, b: 1.0 }.validate().is_err());
    }
}
