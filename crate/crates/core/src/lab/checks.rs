//! Check identifiers and their descriptions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "solution.solver")]
    Solver,
    #[serde(rename = "doubling.homogeneity")]
    Homogeneity,
    #[serde(rename = "doubling.mono")]
    Monotonicity,
    #[serde(rename = "doubling.three_ball")]
    ThreeBall,
    #[serde(rename = "doubling.growth")]
    Growth,
    #[serde(rename = "carleman.lap")]
    LapCar,
    #[serde(rename = "carleman.interior")]
    Interior,
    #[serde(rename = "carleman.bilaplace")]
    Bilaplace,
    #[serde(rename = "carleman.boundary")]
    Boundary,
    #[serde(rename = "carleman.caccioppoli")]
    Caccioppoli,
    #[serde(rename = "carleman.propagation")]
    Propagation,
    #[serde(rename = "nodal.length")]
    NodalLength,
    #[serde(rename = "nodal.scaling")]
    Scaling,
    #[serde(rename = "partition.hyperplane")]
    Hyperplane,
    #[serde(rename = "partition.bad_cubes")]
    BadCubes,
    #[serde(rename = "simplex.covering")]
    Covering,
    #[serde(rename = "simplex.lemma")]
    SimplexLemma,
    #[serde(rename = "bound.recursion")]
    Recursion,
    #[serde(rename = "bound.global")]
    GlobalBound,
}

impl CheckId {
    pub const ALL: [CheckId; 19] = [
        CheckId::Solver,
        CheckId::Homogeneity,
        CheckId::Monotonicity,
        CheckId::ThreeBall,
        CheckId::Growth,
        CheckId::LapCar,
        CheckId::Interior,
        CheckId::Bilaplace,
        CheckId::Boundary,
        CheckId::Caccioppoli,
        CheckId::Propagation,
        CheckId::NodalLength,
        CheckId::Scaling,
        CheckId::Hyperplane,
        CheckId::BadCubes,
        CheckId::Covering,
        CheckId::SimplexLemma,
        CheckId::Recursion,
        CheckId::GlobalBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Solver => "solution.solver",
            CheckId::Homogeneity => "doubling.homogeneity",
            CheckId::Monotonicity => "doubling.mono",
            CheckId::ThreeBall => "doubling.three_ball",
            CheckId::Growth => "doubling.growth",
            CheckId::LapCar => "carleman.lap",
            CheckId::Interior => "carleman.interior",
            CheckId::Bilaplace => "carleman.bilaplace",
            CheckId::Boundary => "carleman.boundary",
            CheckId::Caccioppoli => "carleman.caccioppoli",
            CheckId::Propagation => "carleman.propagation",
            CheckId::NodalLength => "nodal.length",
            CheckId::Scaling => "nodal.scaling",
            CheckId::Hyperplane => "partition.hyperplane",
            CheckId::BadCubes => "partition.bad_cubes",
            CheckId::Covering => "simplex.covering",
            CheckId::SimplexLemma => "simplex.lemma",
            CheckId::Recursion => "bound.recursion",
            CheckId::GlobalBound => "bound.global",
        }
    }

    /// Label of the inequality or statement the check exercises.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::Solver => "bi-Laplace",
            CheckId::Homogeneity => "doubling index definition",
            CheckId::Monotonicity => "mono-del, mono-del-1",
            CheckId::ThreeBall => "three-1",
            CheckId::Growth => "haha-my",
            CheckId::LapCar => "lap-car",
            CheckId::Interior => "car-imp, carle-sec",
            CheckId::Bilaplace => "Carle2",
            CheckId::Boundary => "carleman-2",
            CheckId::Caccioppoli => "hihcac, caccioppoli no bdry",
            CheckId::Propagation => "3ball-ish",
            CheckId::NodalLength => "nodal set measure",
            CheckId::Scaling => "nodal bound M^β",
            CheckId::Hyperplane => "lemdou",
            CheckId::BadCubes => "lem12",
            CheckId::Covering => "simplex covering fact",
            CheckId::SimplexLemma => "simplex-mon",
            CheckId::Recursion => "result",
            CheckId::GlobalBound => "β = α₀/3 + 1/4",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            CheckId::Solver => {
                "Navier-split solve of Δ²u = Wu: second-order error decay on a manufactured \
                 sine solution and small discrete residuals of the analytic generators."
            }
            CheckId::Homogeneity => {
                "The doubling index log₂(sup_{B_2r} |u| / sup_{B_r} |u|) of a degree-k \
                 homogeneous harmonic equals k at every radius."
            }
            CheckId::Monotonicity => {
                "Almost monotonicity of the doubling index: the growth ratio over [R, tR] lies \
                 between t^{(1−δ)N(x,R) + C log₂ δ} and t^{(1+δ)N(x,tR) + C log₂(1/δ)}, and \
                 without the constant once N(x,R) exceeds N₀."
            }
            CheckId::ThreeBall => {
                "Three-ball interpolation ‖u‖_{(2+δ)R} ≤ C ‖u‖_{tR}^θ ‖u‖_R^{1−θ} with θ from \
                 the φ-weight exponents."
            }
            CheckId::Growth => {
                "Doubling growth bound N ≤ C M^{1/3} in the size M of the potential."
            }
            CheckId::LapCar => {
                "Weighted estimate for the Laplacian with weight r^{−τ}: τ‖r^{−τ}f‖ + \
                 ‖r^{1−τ}∇f‖ ≤ C‖r^{2−τ}Δf‖ for τ at distance at least 1/3 from the integers; \
                 the constant grows as τ approaches an integer."
            }
            CheckId::Interior => {
                "Interior estimate for the Laplacian with weight e^{τφ}, φ = −ln r + r^ε, in \
                 its dilation-invariant form, compared with a form carrying r^{ε/2} factors \
                 that is not dilation invariant."
            }
            CheckId::Bilaplace => {
                "Estimate for Δ² − W: τ²‖e^{τφ}f‖ ≤ C‖r⁴ e^{τφ}(Δ²f − Wf)‖ for quantized τ \
                 above C(1 + ‖W‖^{1/2})."
            }
            CheckId::Boundary => {
                "Half-ball estimate with weight e^{τψ}, ψ = e^{−s|x−b|}: interior operator term \
                 plus boundary traces of Δv, ∇Δv, v and ∇v dominate τ³s⁴‖e^{τψ}v‖."
            }
            CheckId::Caccioppoli => {
                "Caccioppoli bounds: weighted derivatives up to order three on an inner annulus \
                 by (‖W‖ + 1)³ times u on an outer annulus, and the half-ball version with \
                 Cauchy data on the flat boundary."
            }
            CheckId::Propagation => {
                "Propagation of smallness from the flat boundary: ‖u‖_{B⁺₁} ≤ \
                 e^{C(1+‖W‖^{1/3})} ‖u‖_{B⁺₂}^κ (Cauchy data)^{1−κ} with κ = p₁/(p₁ + p₀)."
            }
            CheckId::NodalLength => {
                "Marching-squares length of the zero set against analytic line oracles and its \
                 first-order convergence."
            }
            CheckId::Scaling => {
                "Empirical exponent of nodal length against M on the sine family, the \
                 desk-scale shadow of the M^β upper bound."
            }
            CheckId::Hyperplane => {
                "Among the (2A+1)² subcubes meeting the center hyperplane, one has doubling \
                 index at most N/2 when N(Q) ≤ N and N exceeds N₀."
            }
            CheckId::BadCubes => {
                "Of the A² subcubes, fewer than A/2 have doubling index above \
                 max(N(Q)/(1+c), N₀)."
            }
            CheckId::Covering => {
                "Ball covering around a simplex: B_{ρ(1+τ̂)}(x₀) ⊆ ∪ B_ρ(xᵢ) with ρ = K·diam S, \
                 and B_{ρt}(xᵢ) ⊆ B_{ρt(1+1/(Kt))}(x₀)."
            }
            CheckId::SimplexLemma => {
                "Doubling accumulates at the barycenter: large indices at the vertices force \
                 N(x₀, C·diam S) > (1+c)N."
            }
            CheckId::Recursion => {
                "Iterating F(N) ≤ 2A·F(N/(1+c)) down to N₀ against the closed form \
                 (N/N₀)^{log_{1+c} 2A}·F(N₀)."
            }
            CheckId::GlobalBound => {
                "Assembly of the nodal length bound C·M^β with β = log_{1+c}(2A)/3 + 1/4."
            }
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| LabError::UnknownCheck {
                id: s.to_string(),
                valid: CheckId::ALL.iter().map(|c| c.as_str().to_string()).collect(),
            })
    }
}

/// Human-readable description of a check and the statement it exercises.
pub fn describe_check(id: &str) -> Result<String, LabError> {
    let c: CheckId = id.parse()?;
    Ok(format!("{}\n  statement: {}\n  anchor: {}\n", c.as_str(), c.summary(), c.anchor()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.as_str().parse::<CheckId>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
    }

    #[test]
    fn describe_known_and_unknown() {
        assert!(describe_check("carleman.lap").unwrap().contains("lap-car"));
        assert!(describe_check("doubling.mono").unwrap().contains("mono-del"));
        let err = describe_check("nope").unwrap_err().to_string();
        assert!(err.contains("carleman.lap") && err.contains("doubling.mono"));
    }
}
