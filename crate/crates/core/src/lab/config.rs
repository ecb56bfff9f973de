//! Experiment configuration: one JSON document, every field defaulted.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::checks::CheckId;
use crate::doubling::BallNorm;
use crate::error::{LabError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Corpus resolution.
    pub resolution: usize,
    pub bvp_count: usize,
    pub checks: Vec<CheckId>,
    pub solver: SolverConfig,
    pub doubling: DoublingConfig,
    pub monotonicity: MonotonicityConfig,
    pub three_ball: ThreeBallConfig,
    pub carleman: CarlemanConfig,
    pub nodal: NodalConfig,
    pub combinatorics: CombinatoricsConfig,
    pub bound: BoundConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 20240601,
            resolution: 257,
            bvp_count: 8,
            checks: CheckId::ALL.to_vec(),
            solver: SolverConfig::default(),
            doubling: DoublingConfig::default(),
            monotonicity: MonotonicityConfig::default(),
            three_ball: ThreeBallConfig::default(),
            carleman: CarlemanConfig::default(),
            nodal: NodalConfig::default(),
            combinatorics: CombinatoricsConfig::default(),
            bound: BoundConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub order_resolutions: [usize; 2],
    pub order_window: [f64; 2],
    pub residual_limit: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            order_resolutions: [129, 257],
            order_window: [3.6, 4.4],
            residual_limit: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DoublingConfig {
    pub homogeneity_resolution: usize,
    pub homogeneity_degrees: Vec<u32>,
    pub homogeneity_radii: Vec<f64>,
    pub homogeneity_tol: f64,
    pub growth_centers: usize,
    pub growth_radii: usize,
}

impl Default for DoublingConfig {
    fn default() -> Self {
        DoublingConfig {
            homogeneity_resolution: 513,
            homogeneity_degrees: (1..=6).collect(),
            homogeneity_radii: vec![0.05, 0.1, 0.2],
            homogeneity_tol: 0.05,
            growth_centers: 5,
            growth_radii: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonotonicityConfig {
    pub t: Vec<f64>,
    pub delta: f64,
    pub radii: Vec<f64>,
    pub centers_per_axis: usize,
    /// Fit centers fill `[-h, h]²`.
    pub probe_half: f64,
    /// Validation centers fill a shifted square.
    pub validation_center: [f64; 2],
    pub validation_half: f64,
    pub slack: f64,
}

impl Default for MonotonicityConfig {
    fn default() -> Self {
        MonotonicityConfig {
            t: vec![3.0, 4.0, 6.0, 8.0],
            delta: 0.1,
            radii: vec![0.03, 0.04],
            centers_per_axis: 3,
            probe_half: 0.3,
            validation_center: [0.05, -0.04],
            validation_half: 0.25,
            slack: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThreeBallConfig {
    pub r: f64,
    pub t: f64,
    pub delta: f64,
    pub eps: f64,
    pub norm: BallNorm,
    pub centers_per_axis: usize,
    pub probe_half: f64,
    pub stability_tol: f64,
}

impl Default for ThreeBallConfig {
    fn default() -> Self {
        ThreeBallConfig {
            r: 0.1,
            t: 4.0,
            delta: 0.05,
            eps: 0.1,
            norm: BallNorm::L2,
            centers_per_axis: 3,
            probe_half: 0.3,
            stability_tol: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CarlemanConfig {
    pub eps: f64,
    pub r0: f64,
    pub s: f64,
    pub b_n: f64,
    /// Constant in the magnitude thresholds `τ > C(1 + M^p)`.
    pub c_tau: f64,
    pub lap_resolution: usize,
    pub lap_degree: u32,
    pub lap_reference: f64,
    pub lap_quantized: Vec<f64>,
    pub lap_ladder_steps: usize,
    pub interior_tau: f64,
    pub dilations: Vec<f64>,
    pub dilation_tol: f64,
    pub bilaplace_tau: f64,
    pub bilaplace_window: [f64; 2],
    pub bilaplace_refinement_tol: f64,
    pub boundary_tau: f64,
    pub boundary_refinement_tol: f64,
    pub caccioppoli_radii: [f64; 4],
}

impl Default for CarlemanConfig {
    fn default() -> Self {
        CarlemanConfig {
            eps: 0.1,
            r0: 0.5,
            s: 5.0,
            b_n: 0.1,
            c_tau: 1.0,
            lap_resolution: 513,
            lap_degree: 5,
            lap_reference: 5.1,
            lap_quantized: vec![5.5, 5.33],
            lap_ladder_steps: 5,
            interior_tau: 8.5,
            dilations: vec![1.0, 0.5, 0.25],
            dilation_tol: 0.1,
            bilaplace_tau: 12.5,
            bilaplace_window: [3.0, 5.0],
            bilaplace_refinement_tol: 0.05,
            boundary_tau: 10.5,
            boundary_refinement_tol: 0.1,
            caccioppoli_radii: [0.2, 0.4, 0.6, 0.8],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NodalConfig {
    pub resolutions: Vec<usize>,
    pub cubic_resolution: usize,
    pub cubic_tol: f64,
    pub rate_window: [f64; 2],
    /// Sine frequencies `a = b = mπ`.
    pub scaling_multiples: Vec<u32>,
    pub scaling_resolution: usize,
    pub scaling_tol: f64,
}

impl Default for NodalConfig {
    fn default() -> Self {
        NodalConfig {
            resolutions: vec![129, 257, 513],
            cubic_resolution: 513,
            cubic_tol: 0.05,
            rate_window: [0.8, 1.2],
            scaling_multiples: vec![1, 2, 4, 8],
            scaling_resolution: 257,
            scaling_tol: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CombinatoricsConfig {
    pub hyperplane_a: Vec<usize>,
    pub bad_cube_a: Vec<usize>,
    pub c: f64,
    /// Index threshold below which the partition lemmas make no claim.
    pub n0: f64,
    /// Checks run on `[-h, h]²`.
    pub cube_half: f64,
    pub probe_centers: usize,
    pub probe_radii: usize,
    pub simplex_count: usize,
    pub min_width: f64,
    pub k: f64,
    pub tau_hat: f64,
    pub samples: usize,
    /// Barycenter radius factor of the simplex check.
    pub c_big: f64,
    pub simplex_scale: f64,
}

impl Default for CombinatoricsConfig {
    fn default() -> Self {
        CombinatoricsConfig {
            hyperplane_a: vec![8, 12, 16],
            bad_cube_a: vec![8, 16],
            c: 0.05,
            n0: 3.0,
            cube_half: 0.5,
            probe_centers: 3,
            probe_radii: 4,
            simplex_count: 50,
            min_width: 0.3,
            k: 4.0,
            tau_hat: 0.05,
            samples: 100_000,
            c_big: 8.0,
            simplex_scale: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundConfig {
    pub a: f64,
    pub c: f64,
    pub cover_constant: f64,
    pub m_values: Vec<f64>,
    pub grid_points: usize,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            a: 10.0,
            c: 0.1,
            cover_constant: 1.0,
            m_values: vec![1.0, 10.0, 100.0, 1000.0],
            grid_points: 100,
        }
    }
}

fn odd_resolution(v: usize, min: usize) -> bool {
    v >= min && v % 2 == 1
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Every offending field, by path.
    pub fn validate(&self) -> Result<()> {
        let mut errs: Vec<String> = Vec::new();
        let mut need = |ok: bool, msg: &str| {
            if !ok {
                errs.push(msg.to_string());
            }
        };
        need(odd_resolution(self.resolution, 65), "resolution: odd and at least 65");
        let s = &self.solver;
        need(
            s.order_resolutions.iter().all(|&r| odd_resolution(r, 65)),
            "solver.order_resolutions: odd and at least 65",
        );
        need(s.order_window[0] < s.order_window[1], "solver.order_window: lower < upper");
        let d = &self.doubling;
        need(odd_resolution(d.homogeneity_resolution, 33), "doubling.homogeneity_resolution: odd and at least 33");
        need(
            d.homogeneity_radii.iter().all(|&r| r > 0.0 && r <= 0.25),
            "doubling.homogeneity_radii: in (0, 0.25]",
        );
        need(
            d.homogeneity_degrees.iter().all(|&k| (1..=8).contains(&k)),
            "doubling.homogeneity_degrees: in 1..=8",
        );
        need(d.growth_centers >= 1 && d.growth_radii >= 1, "doubling.growth_*: at least 1");
        let m = &self.monotonicity;
        need(m.t.iter().all(|&t| t > 2.0), "monotonicity.t: every t > 2");
        need(m.delta > 0.0 && m.delta <= 0.1, "monotonicity.delta: in (0, 1/10]");
        let reach = m.t.iter().copied().fold(0.0, f64::max) * m.radii.iter().copied().fold(0.0, f64::max) * 2.0;
        need(
            m.probe_half + reach <= 1.0 && m.validation_half + reach + m.validation_center[0].abs().max(m.validation_center[1].abs()) <= 1.0,
            "monotonicity: probe balls B_{2tR} must stay inside [-1, 1]²",
        );
        need(m.radii.iter().all(|&r| r > 0.0), "monotonicity.radii: positive");
        need(m.slack >= 0.0, "monotonicity.slack: nonnegative");
        let t = &self.three_ball;
        need(t.delta > 0.0 && t.delta < 0.5, "three_ball.delta: in (0, 1/2)");
        need(t.t - 2.0 * t.delta > 2.0 + t.delta, "three_ball: t − 2δ > 2 + δ");
        need(t.eps > 0.0 && t.eps < 1.0, "three_ball.eps: in (0, 1)");
        need(t.probe_half + t.t * t.r <= 1.0, "three_ball: B_{tR} must stay inside [-1, 1]²");
        let c = &self.carleman;
        need(c.eps > 0.0 && c.eps < 1.0, "carleman.eps: in (0, 1)");
        need(c.r0 > 0.0 && c.r0 < 1.0, "carleman.r0: in (0, 1)");
        need(c.s > 0.0 && c.b_n > 0.0, "carleman.s, carleman.b_n: positive");
        need(odd_resolution(c.lap_resolution, 65), "carleman.lap_resolution: odd and at least 65");
        need(c.dilations.iter().all(|&l| l > 0.0 && l <= 1.0), "carleman.dilations: in (0, 1]");
        need(c.interior_tau > 0.0 && c.bilaplace_tau > 0.0 && c.boundary_tau > 0.0, "carleman.*_tau: positive");
        let [c4, c3, c2, c1] = c.caccioppoli_radii;
        need(0.0 < c4 && c4 < c3 && c3 < c2 && c2 < c1 && c1 < 1.0, "carleman.caccioppoli_radii: 0 < c4 < c3 < c2 < c1 < 1");
        let n = &self.nodal;
        need(n.resolutions.len() >= 3 && n.resolutions.iter().all(|&r| odd_resolution(r, 9)), "nodal.resolutions: at least three odd values");
        need(odd_resolution(n.cubic_resolution, 9) && odd_resolution(n.scaling_resolution, 9), "nodal.*_resolution: odd");
        need(n.scaling_multiples.len() >= 3 && n.scaling_multiples.iter().all(|&k| k >= 1), "nodal.scaling_multiples: at least three positive values");
        let k = &self.combinatorics;
        need(k.hyperplane_a.iter().all(|&a| a >= 1), "combinatorics.hyperplane_a: at least 1");
        need(k.bad_cube_a.iter().all(|&a| a >= 2), "combinatorics.bad_cube_a: at least 2");
        need(k.c > 0.0, "combinatorics.c: positive");
        need(k.n0 >= 0.0, "combinatorics.n0: nonnegative");
        need(k.cube_half > 0.0 && k.cube_half <= 0.5, "combinatorics.cube_half: in (0, 1/2]");
        need(k.probe_centers >= 1 && k.probe_radii >= 1, "combinatorics.probe_*: at least 1");
        need(k.min_width > 0.0 && k.min_width < 0.8, "combinatorics.min_width: in (0, 0.8)");
        need(k.k > 0.0 && k.tau_hat >= 0.0 && k.samples > 0, "combinatorics: K > 0, τ̂ ≥ 0, samples > 0");
        need(k.c_big >= k.k, "combinatorics.c_big: at least K");
        need(k.simplex_scale > 0.0 && k.simplex_scale * k.c_big * 2.0 <= 0.5, "combinatorics.simplex_scale: barycenter balls must fit");
        let b = &self.bound;
        need(b.a >= 2.0 && b.c > 0.0, "bound: A ≥ 2 and c > 0");
        need(b.m_values.iter().all(|&m| m >= 1.0), "bound.m_values: every M ≥ 1");
        need(b.grid_points >= 1, "bound.grid_points: at least 1");
        if errs.is_empty() {
            Ok(())
        } else {
            Err(LabError::Config(errs))
        }
    }

    /// Canonical JSON used for hashing and for the manifest.
    pub fn canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn hash(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.canonical_json()?.as_bytes())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid_and_round_trips() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let back = ExperimentConfig::from_json(&cfg.canonical_json().unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(ExperimentConfig::from_json("{}").unwrap(), cfg);
    }

    #[test]
    fn every_offending_field_listed() {
        let mut cfg = ExperimentConfig {
            resolution: 256,
            ..ExperimentConfig::default()
        };
        cfg.monotonicity.delta = 0.3;
        cfg.bound.a = 1.0;
        let Err(LabError::Config(errs)) = cfg.validate() else {
            panic!("expected a config error")
        };
        assert_eq!(errs.len(), 3, "{errs:?}");
        assert!(ExperimentConfig::from_json(r#"{"sede": 1}"#).is_err());
    }
}
