//! The frozen standard corpus: eight analytic solutions and eight seeded
//! boundary-value solutions on `[-1, 1]²`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Cube, Point};
use crate::solution::{
    materialize, AnalyticFn, BoundaryTerm, BvpParams, Family, Part, Potential, Solution,
    SolutionSpec, SolveOptions,
};

pub const CORPUS_DOMAIN: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];
/// Potentials of the seeded members satisfy `‖W‖_∞ ≤ 1/128`, which keeps
/// `‖W‖_∞·diam⁴ ≤ 1/2` on the corpus domain.
pub const BVP_POTENTIAL_BOUND: f64 = 1.0 / 128.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberSpec {
    pub id: String,
    /// Seed of the generating stream, for seeded members.
    pub seed: Option<u64>,
    pub spec: SolutionSpec,
}

pub struct Member {
    pub id: String,
    pub spec: MemberSpec,
    pub solution: Solution,
}

impl Member {
    pub fn cube(&self) -> Cube {
        Cube::centered(Point::ORIGIN, 2.0).expect("positive side")
    }
}

fn analytic_members(res: usize) -> Vec<MemberSpec> {
    let fams = [
        ("harm-re-2", Family::HarmonicPolynomial { k: 2, part: Part::Real }),
        ("harm-im-3", Family::HarmonicPolynomial { k: 3, part: Part::Imaginary }),
        ("harm-re-5", Family::HarmonicPolynomial { k: 5, part: Part::Real }),
        ("harm-re-8", Family::HarmonicPolynomial { k: 8, part: Part::Real }),
        ("sine-1-1", Family::SineProduct { a: PI, b: PI }),
        ("sine-2-2", Family::SineProduct { a: 2.0 * PI, b: 2.0 * PI }),
        ("sine-3-2", Family::SineProduct { a: 3.0 * PI, b: 2.0 * PI }),
        ("exp-2-1", Family::Exponential { mu: [2.0, 1.0] }),
    ];
    fams.into_iter()
        .map(|(id, family)| MemberSpec {
            id: id.to_string(),
            seed: None,
            spec: SolutionSpec::new(family, CORPUS_DOMAIN, res),
        })
        .collect()
}

fn harmonic_term(rng: &mut ChaCha8Rng, kmax: u32, scale: f64) -> BoundaryTerm {
    let k = rng.gen_range(1..=kmax);
    let part = if rng.gen_bool(0.5) { Part::Real } else { Part::Imaginary };
    BoundaryTerm {
        coef: scale * rng.gen_range(-1.0..1.0),
        func: AnalyticFn::harmonic(k, part),
        laplacian: false,
    }
}

/// Boundary-value member drawn from a ChaCha8 stream seeded with `seed`.
pub fn seeded_member(seed: u64, res: usize) -> MemberSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = 0.5 * BVP_POTENTIAL_BOUND;
    let potential = Potential::Cosine {
        mean: rng.gen_range(0.0..half),
        amplitude: rng.gen_range(0.0..half),
        wave: [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
        phase: rng.gen_range(0.0..TAU),
    };
    let mut g0: Vec<BoundaryTerm> = (0..3).map(|_| harmonic_term(&mut rng, 6, 1.0)).collect();
    g0.push(BoundaryTerm {
        coef: rng.gen_range(-0.5..0.5),
        func: AnalyticFn::Exponential {
            mu: [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)],
        },
        laplacian: false,
    });
    let g1 = vec![harmonic_term(&mut rng, 4, 0.5)];
    MemberSpec {
        id: format!("bvp-{seed}"),
        seed: Some(seed),
        spec: SolutionSpec::new(Family::Bvp(BvpParams { potential, g0, g1 }), CORPUS_DOMAIN, res),
    }
}

/// Member specs in a fixed order: analytic ones first, then
/// `bvp_count` seeded members with seeds `seed, seed + 1, ...`.
pub fn standard_corpus(seed: u64, bvp_count: usize, res: usize) -> Vec<MemberSpec> {
    let mut out = analytic_members(res);
    out.extend((0..bvp_count as u64).map(|k| seeded_member(seed.wrapping_add(k), res)));
    out
}

/// Sample or solve every member. Independent members run in parallel; the
/// output order follows the input.
pub fn materialize_corpus(specs: &[MemberSpec], opts: &SolveOptions) -> Result<Vec<Member>> {
    specs
        .par_iter()
        .map(|m| {
            Ok(Member {
                id: m.id.clone(),
                spec: m.clone(),
                solution: materialize(&m.spec, opts)?,
            })
        })
        .collect()
}

/// The same corpus at another resolution.
pub fn at_resolution(specs: &[MemberSpec], res: usize) -> Vec<MemberSpec> {
    specs
        .iter()
        .map(|m| MemberSpec {
            spec: SolutionSpec {
                resolution: res,
                ..m.spec.clone()
            },
            ..m.clone()
        })
        .collect()
}
