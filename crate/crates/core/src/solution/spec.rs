use serde::{Deserialize, Serialize};

use super::analytic::{AnalyticFn, Part};
use crate::error::{LabError, Result};
use crate::field::{Grid2D, Point};

/// Smooth potential `W(x)` for boundary-value solves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    Constant { value: f64 },
    /// `mean + amplitude · cos(wave·x + phase)`.
    Cosine {
        mean: f64,
        amplitude: f64,
        wave: [f64; 2],
        phase: f64,
    },
}

impl Potential {
    pub fn eval(&self, p: Point) -> f64 {
        match *self {
            Potential::Constant { value } => value,
            Potential::Cosine {
                mean,
                amplitude,
                wave,
                phase,
            } => mean + amplitude * (wave[0] * p.x + wave[1] * p.y + phase).cos(),
        }
    }

    /// Upper bound for `‖W‖_∞`.
    pub fn sup_bound(&self) -> f64 {
        match *self {
            Potential::Constant { value } => value.abs(),
            Potential::Cosine {
                mean, amplitude, ..
            } => mean.abs() + amplitude.abs(),
        }
    }
}

/// One term `coef · f` (or `coef · Δf`) of boundary data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub coef: f64,
    pub func: AnalyticFn,
    #[serde(default)]
    pub laplacian: bool,
}

impl BoundaryTerm {
    pub fn eval(&self, p: Point) -> f64 {
        let v = if self.laplacian {
            self.func.laplacian(p)
        } else {
            self.func.eval(p)
        };
        self.coef * v
    }
}

pub fn eval_terms(terms: &[BoundaryTerm], p: Point) -> f64 {
    terms.iter().map(|t| t.eval(p)).sum()
}

/// Boundary data `g0 = u`, `g1 = Δu` and potential for a Navier-split solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BvpParams {
    pub potential: Potential,
    #[serde(default)]
    pub g0: Vec<BoundaryTerm>,
    #[serde(default)]
    pub g1: Vec<BoundaryTerm>,
}

impl BvpParams {
    /// Data taken from an analytic solution: `g0 = f`, `g1 = Δf` and its
    /// constant potential.
    pub fn manufactured(f: AnalyticFn) -> Self {
        BvpParams {
            potential: Potential::Constant {
                value: f.potential(),
            },
            g0: vec![BoundaryTerm {
                coef: 1.0,
                func: f,
                laplacian: false,
            }],
            g1: vec![BoundaryTerm {
                coef: 1.0,
                func: f,
                laplacian: true,
            }],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    HarmonicPolynomial {
        k: u32,
        part: Part,
    },
    SineProduct {
        a: f64,
        b: f64,
    },
    Exponential {
        mu: [f64; 2],
    },
    Bvp(BvpParams),
}

impl Family {
    pub fn analytic(&self) -> Option<AnalyticFn> {
        match *self {
            Family::HarmonicPolynomial { k, part } => Some(AnalyticFn::harmonic(k, part)),
            Family::SineProduct { a, b } => Some(AnalyticFn::SineProduct { a, b }),
            Family::Exponential { mu } => Some(AnalyticFn::Exponential { mu }),
            Family::Bvp(_) => None,
        }
    }
}

/// Declarative description of a solution on a square domain, serialized as
/// `{"family": ..., "params": {...}, "domain": [x0, y0, x1, y1], "resolution": N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpec {
    #[serde(flatten)]
    pub family: Family,
    pub domain: [f64; 4],
    pub resolution: usize,
}

impl SolutionSpec {
    pub fn new(family: Family, domain: [f64; 4], resolution: usize) -> Self {
        SolutionSpec {
            family,
            domain,
            resolution,
        }
    }

    pub fn grid(&self) -> Result<Grid2D> {
        let [x0, y0, x1, y1] = self.domain;
        let (wx, wy) = (x1 - x0, y1 - y0);
        if !(wx > 0.0) || (wx - wy).abs() > 1e-12 * wx.abs().max(1.0) {
            return Err(LabError::InvalidSpec(format!(
                "domain {:?} must be a non-empty square",
                self.domain
            )));
        }
        Grid2D::new(Point::new(x0, y0), wx, self.resolution)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        match &self.family {
            Family::Bvp(p) => {
                if self.resolution < 65 {
                    return Err(LabError::InvalidSpec(format!(
                        "boundary-value solves need resolution ≥ 65 (got {})",
                        self.resolution
                    )));
                }
                for t in p.g0.iter().chain(&p.g1) {
                    t.func.validate()?;
                }
                Ok(())
            }
            f => f.analytic().expect("analytic family").validate(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SolutionSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout() {
        let s = r#"{"family": "sine-product", "params": {"a": 3.0, "b": 2.0},
                   "domain": [0, 0, 1, 1], "resolution": 129}"#;
        let spec = SolutionSpec::from_json(s).unwrap();
        assert_eq!(spec.family, Family::SineProduct { a: 3.0, b: 2.0 });
        let back: serde_json::Value = serde_json::from_str(&spec.to_json().unwrap()).unwrap();
        assert_eq!(back["family"], "sine-product");
        assert_eq!(back["params"]["a"], 3.0);
        assert_eq!(back["resolution"], 129);
    }

    #[test]
    fn harmonic_json() {
        let s = r#"{"family": "harmonic-polynomial", "params": {"k": 3, "part": "real"},
                   "domain": [-1, -1, 1, 1], "resolution": 65}"#;
        let spec = SolutionSpec::from_json(s).unwrap();
        assert_eq!(spec.family.analytic(), Some(AnalyticFn::harmonic(3, Part::Real)));
    }

    #[test]
    fn rejects_rectangles_and_coarse_bvp() {
        let s = r#"{"family": "exponential", "params": {"mu": [1, 0]},
                   "domain": [0, 0, 1, 2], "resolution": 65}"#;
        assert!(SolutionSpec::from_json(s).is_err());
        let spec = SolutionSpec::new(
            Family::Bvp(BvpParams::manufactured(AnalyticFn::harmonic(2, Part::Real))),
            [0.0, 0.0, 1.0, 1.0],
            33,
        );
        assert!(spec.validate().is_err());
    }
}
