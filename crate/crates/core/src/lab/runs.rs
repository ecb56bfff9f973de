//! One runner per check. Each returns its verdict, counts, a JSON summary
//! and the report files it wants written.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::checks::CheckId;
use super::corpus::Member;
use super::suite::{Artifact, CheckResult, Counts, SuiteContext, Verdict};
use crate::carleman::{
    check_caccioppoli_boundary, check_caccioppoli_interior, check_carleman_bilaplace,
    check_carleman_boundary, check_carleman_interior, check_carleman_laplace, check_propagation,
    dilation_sweep, propagation_exponents, tau_scaling, CarlemanCheckReport, Measure, ShellRadii,
    WeightPhi, WeightPsi,
};
use crate::doubling::{
    check_doubling_growth, check_monotonicity, check_three_ball, doubling_index, fit_monotonicity,
    unexplained_violations, write_monotonicity_csv, GrowthMember, MonotonicityRecord, ProbePlan,
    ThreeBallParams,
};
use crate::error::{LabError, Result};
use crate::field::io::write_nlf1;
use crate::field::{make_bump, BumpProfile, Cube, Grid2D, Point, Region, ScalarField};
use crate::nodal::{
    assemble_global_bound, bad_cube_count, extract_nodal_set, hyperplane_lemma_check,
    nodal_bound_recursion, random_simplex, refinement_rate, scaling_exponent_fit,
    simplex_covering_check, simplex_lemma_check, simplex_metrics, PartitionReport,
    SimplexLemmaParams, SimplexVerdict,
};
use crate::solution::bvp::LINEAR_RESIDUAL_LIMIT;
use crate::solution::{residual, solve_spec, AnalyticFn, BvpParams, Family, Part, SolutionSpec, SolveOptions};

/// Reference values of the propagation exponents at `s = 5`, `b_n = 0.1`.
pub const PROPAGATION_REFERENCE: [f64; 3] = [0.003314, 0.995913, 0.99668];
/// Clipped length of the zero set of `Re z³` on `[-1, 1]²`.
pub fn cubic_nodal_length() -> f64 {
    2.0 + 8.0 / 3f64.sqrt()
}
/// `C` of the half-ball Caccioppoli bound for `u = x₂`, `W = 0`:
/// `‖1‖_{B⁺_{1/2}} / (‖x₂‖_{B⁺₂} + ‖1‖_{L²(−2,2)})`.
pub fn caccioppoli_linear_oracle() -> f64 {
    (PI / 8.0).sqrt() / ((2.0 * PI).sqrt() + 2.0)
}

const SEED_SALT_SIMPLEX: u64 = 0x5159_1ec0;

/// Named assertions and run counts accumulated by a runner.
#[derive(Default)]
struct Tally {
    counts: Counts,
    assertions: BTreeMap<String, bool>,
}

impl Tally {
    fn assert(&mut self, name: &str, ok: bool) {
        if ok {
            self.counts.pass += 1;
        } else {
            self.counts.fail += 1;
        }
        self.assertions.insert(name.to_string(), ok);
    }

    fn flag(&mut self, n: usize) {
        self.counts.flagged += n;
    }

    fn runs(&mut self, pass: usize, fail: usize, flagged: usize) {
        self.counts.pass += pass;
        self.counts.fail += fail;
        self.counts.flagged += flagged;
    }

    fn verdict(&self) -> Verdict {
        if self.counts.fail > 0 {
            Verdict::Fail
        } else if self.counts.flagged > 0 {
            Verdict::Flagged
        } else {
            Verdict::Pass
        }
    }
}

struct Output {
    tally: Tally,
    summary: Value,
    artifacts: Vec<Artifact>,
}

fn json_file(name: &str, v: &impl Serialize) -> Result<Artifact> {
    let mut bytes = serde_json::to_vec_pretty(v)?;
    bytes.push(b'\n');
    Ok(Artifact {
        name: name.to_string(),
        bytes,
    })
}

fn csv_file<R: Serialize>(name: &str, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<Artifact> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Io(e.into_error()))?;
    Ok(Artifact {
        name: name.to_string(),
        bytes,
    })
}

fn bytes_file(name: &str, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Artifact> {
    let mut bytes = Vec::new();
    f(&mut bytes)?;
    Ok(Artifact {
        name: name.to_string(),
        bytes,
    })
}

fn rel_change(a: f64, b: f64) -> f64 {
    (b - a).abs() / a.abs()
}

fn c_of(r: &CarlemanCheckReport) -> f64 {
    r.fitted_c
}

pub fn run_check(ctx: &SuiteContext, id: CheckId) -> Result<CheckResult> {
    let out = match id {
        CheckId::Solver => solver(ctx),
        CheckId::Homogeneity => homogeneity(ctx),
        CheckId::Monotonicity => monotonicity(ctx),
        CheckId::ThreeBall => three_ball(ctx),
        CheckId::Growth => growth(ctx),
        CheckId::LapCar => lap_car(ctx),
        CheckId::Interior => interior(ctx),
        CheckId::Bilaplace => bilaplace(ctx),
        CheckId::Boundary => boundary(ctx),
        CheckId::Caccioppoli => caccioppoli(ctx),
        CheckId::Propagation => propagation(ctx),
        CheckId::NodalLength => nodal_length(ctx),
        CheckId::Scaling => scaling(ctx),
        CheckId::Hyperplane => hyperplane(ctx),
        CheckId::BadCubes => bad_cubes(ctx),
        CheckId::Covering => covering(ctx),
        CheckId::SimplexLemma => simplex_lemma(ctx),
        CheckId::Recursion => recursion(ctx),
        CheckId::GlobalBound => global_bound(ctx),
    }?;
    let mut summary = out.summary;
    if let Value::Object(m) = &mut summary {
        m.insert("assertions".into(), json!(out.tally.assertions));
    }
    Ok(CheckResult {
        id,
        verdict: out.tally.verdict(),
        counts: out.tally.counts,
        summary,
        artifacts: out.artifacts,
    })
}

fn solver(ctx: &SuiteContext) -> Result<Output> {
    let s = &ctx.config.solver;
    let mut t = Tally::default();
    let f = AnalyticFn::SineProduct { a: PI, b: PI };
    let order: Vec<Value> = s
        .order_resolutions
        .par_iter()
        .map(|&res| {
            let spec = SolutionSpec::new(Family::Bvp(BvpParams::manufactured(f)), [0.1, 0.1, 0.9, 0.9], res);
            let sol = solve_spec(&spec, &SolveOptions::default())?;
            let err = sol.u.sub(&f.sample(*sol.u.grid())?)?.max_abs();
            Ok(json!({"resolution": res, "max_error": err, "report": sol.report}))
        })
        .collect::<Result<_>>()?;
    let e = |k: usize| order[k]["max_error"].as_f64().unwrap_or(f64::NAN);
    let ratio = e(0) / e(1);
    t.assert("order_ratio", ratio >= s.order_window[0] && ratio <= s.order_window[1]);

    let res = ctx.config.resolution;
    let grid = Grid2D::square(0.0, 0.0, 1.0, res)?;
    let region = Region::cube(Cube::new(Point::new(0.05, 0.05), 0.9)?);
    let mut gens: Vec<(String, AnalyticFn)> = Vec::new();
    for k in 1..=3 {
        gens.push((format!("harm-re-{k}"), AnalyticFn::harmonic(k, Part::Real)));
        gens.push((format!("harm-im-{k}"), AnalyticFn::harmonic(k, Part::Imaginary)));
    }
    gens.push(("exp-1-0".into(), AnalyticFn::Exponential { mu: [1.0, 0.0] }));
    gens.push(("sine-1-1".into(), f));
    let mut residuals = Vec::new();
    for (id, g) in &gens {
        let u = g.sample(grid)?;
        let w = ScalarField::constant(grid, g.potential())?;
        let r = residual(&u, &w, &region)?;
        t.assert(&format!("residual:{id}"), r <= s.residual_limit);
        residuals.push(json!({"id": id, "residual": r}));
    }

    let mut solves = Vec::new();
    for m in ctx.corpus()? {
        if let Some(rep) = &m.solution.report {
            t.assert(&format!("converged:{}", m.id), rep.linear_residual <= LINEAR_RESIDUAL_LIMIT);
            solves.push(json!({
                "id": m.id,
                "iterations": rep.iterations,
                "linear_residual": rep.linear_residual,
                "pde_residual": rep.pde_residual,
                "contraction": rep.contraction,
                "potential_sup": m.solution.m,
            }));
        }
    }
    let summary = json!({
        "order_ratio": ratio,
        "order_window": s.order_window,
        "residual_limit": s.residual_limit,
        "resolution": res,
    });
    let file = json!({"order": order, "order_ratio": ratio, "generator_residuals": residuals, "corpus_solves": solves});
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("solver.json", &file)?],
    })
}

fn homogeneity(ctx: &SuiteContext) -> Result<Output> {
    let d = &ctx.config.doubling;
    let grid = Grid2D::centered(1.0, d.homogeneity_resolution)?;
    let rows: Vec<(u32, f64, f64, f64, bool)> = d
        .homogeneity_degrees
        .par_iter()
        .map(|&k| {
            let u = AnalyticFn::harmonic(k, Part::Real).sample(grid)?;
            d.homogeneity_radii
                .iter()
                .map(|&r| {
                    let n = doubling_index(&u, Point::ORIGIN, r)?.index;
                    let dev = (n - k as f64).abs();
                    Ok((k, r, n, dev, dev <= d.homogeneity_tol))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    let mut t = Tally::default();
    let pass = rows.iter().filter(|r| r.4).count();
    t.runs(pass, rows.len() - pass, 0);
    let worst = rows.iter().map(|r| r.3).fold(0.0, f64::max);
    t.assertions.insert("all_within_tol".into(), pass == rows.len());
    Ok(Output {
        tally: t,
        summary: json!({"max_deviation": worst, "tol": d.homogeneity_tol, "resolution": d.homogeneity_resolution}),
        artifacts: vec![csv_file("homogeneity.csv", &["k", "r", "N", "deviation", "pass"], rows)?],
    })
}

type Tagged = Vec<(String, MonotonicityRecord)>;

fn mono_sweep(corpus: &[Member], centers: &[Point], radii: &[f64], ts: &[f64], delta: f64) -> Result<Vec<Tagged>> {
    corpus
        .par_iter()
        .map(|m| {
            let mut v = Vec::with_capacity(centers.len() * radii.len() * ts.len());
            for &x in centers {
                for &r in radii {
                    for &t in ts {
                        v.push((m.id.clone(), check_monotonicity(&m.solution.u, x, r, t, delta)?));
                    }
                }
            }
            Ok(v)
        })
        .collect()
}

fn monotonicity(ctx: &SuiteContext) -> Result<Output> {
    let m = &ctx.config.monotonicity;
    let corpus = ctx.corpus()?;
    let lattice = ProbePlan::new(m.centers_per_axis, 1);
    let fit_centers = lattice.centers(&Cube::centered(Point::ORIGIN, 2.0 * m.probe_half)?);
    let vc = Point::new(m.validation_center[0], m.validation_center[1]);
    let val_centers = lattice.centers(&Cube::centered(vc, 2.0 * m.validation_half)?);
    let fit_rows = mono_sweep(corpus, &fit_centers, &m.radii, &m.t, m.delta)?.concat();
    let val_rows = mono_sweep(corpus, &val_centers, &m.radii, &m.t, m.delta)?;
    let fit = fit_monotonicity(fit_rows.iter().map(|(_, r)| r));
    let mut unexplained = Vec::new();
    for rows in &val_rows {
        for (kind, rec) in unexplained_violations(rows.iter().map(|(_, r)| r), &fit, m.slack) {
            unexplained.push(json!({"id": rows[0].0, "kind": kind, "record": rec}));
        }
    }
    let val_rows: Tagged = val_rows.concat();
    let n0 = fit.n0 * (1.0 + m.slack);
    let sharp_claims = val_rows.iter().filter(|(_, r)| r.index_inner > n0).count();
    let mut t = Tally::default();
    t.runs(val_rows.len() - unexplained.len(), unexplained.len(), 0);
    t.assertions.insert("no_unexplained_violations".into(), unexplained.is_empty());
    let summary = json!({
        "fit": fit,
        "slack": m.slack,
        "validation_records": val_rows.len(),
        "sharp_claims": sharp_claims,
        "unexplained": unexplained.len(),
    });
    let file = json!({
        "fit": fit,
        "delta": m.delta,
        "t": m.t,
        "radii": m.radii,
        "slack": m.slack,
        "fit_centers": fit_centers,
        "validation_centers": val_centers,
        "validation_records": val_rows.len(),
        "sharp_claims": sharp_claims,
        "unexplained": unexplained,
    });
    let c = fit.c * (1.0 + m.slack);
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![
            bytes_file("monotonicity.csv", |b| write_monotonicity_csv(&fit_rows, fit.c, b))?,
            bytes_file("monotonicity_validation.csv", |b| write_monotonicity_csv(&val_rows, c, b))?,
            json_file("monotonicity_fit.json", &file)?,
        ],
    })
}

fn three_ball(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.three_ball;
    let p = ThreeBallParams {
        r: c.r,
        t: c.t,
        delta: c.delta,
        eps: c.eps,
        norm: c.norm,
    };
    let centers = ProbePlan::new(c.centers_per_axis, 1).centers(&Cube::centered(Point::ORIGIN, 2.0 * c.probe_half)?);
    let coarse = ctx.corpus()?;
    let fine = ctx.fine_corpus()?;
    let rows: Vec<(String, f64, f64, f64, f64, f64)> = coarse
        .par_iter()
        .zip(fine.par_iter())
        .map(|(mc, mf)| {
            centers
                .iter()
                .map(|&x| {
                    let a = check_three_ball(&mc.solution.u, x, &p)?;
                    let b = check_three_ball(&mf.solution.u, x, &p)?;
                    Ok((mc.id.clone(), x.x, x.y, a.exponents.theta, a.constant, b.constant))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    let c_coarse = rows.iter().map(|r| r.4).fold(0.0, f64::max);
    let c_fine = rows.iter().map(|r| r.5).fold(0.0, f64::max);
    let theta = rows.first().map(|r| r.3).unwrap_or(f64::NAN);
    let change = rel_change(c_coarse, c_fine);
    let mut t = Tally::default();
    t.assert("theta_in_unit_interval", rows.iter().all(|r| r.3 > 0.0 && r.3 < 1.0));
    t.assert("constant_finite", c_coarse.is_finite() && c_fine.is_finite());
    t.assert("stable_under_refinement", change <= c.stability_tol);
    let summary = json!({
        "theta": theta,
        "constant": c_coarse,
        "constant_refined": c_fine,
        "relative_change": change,
        "tol": c.stability_tol,
    });
    let file = json!({
        "params": p,
        "resolution": ctx.config.resolution,
        "refined_resolution": 2 * ctx.config.resolution - 1,
        "constant": c_coarse,
        "constant_refined": c_fine,
        "relative_change": change,
        "theta": theta,
    });
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![
            csv_file("three_ball.csv", &["solution_id", "x", "y", "theta", "constant", "constant_refined"], rows)?,
            json_file("three_ball.json", &file)?,
        ],
    })
}

fn growth(ctx: &SuiteContext) -> Result<Output> {
    let d = &ctx.config.doubling;
    let corpus = ctx.corpus()?;
    let cube = Cube::centered(Point::ORIGIN, 1.0)?;
    let plan = ProbePlan::new(d.growth_centers, d.growth_radii).with_top(0.25).skipping();
    let members: Vec<GrowthMember> = corpus
        .iter()
        .map(|m| GrowthMember {
            id: &m.id,
            u: &m.solution.u,
            m: m.solution.m,
            cube,
        })
        .collect();
    let table = check_doubling_growth(&members, &plan)?;
    let mut t = Tally::default();
    t.assert("fitted_c_finite", table.fitted_c.is_finite());
    let rows = table.rows.iter().map(|r| {
        (
            r.id.clone(),
            r.m,
            r.m_floor,
            r.n_max,
            r.argmax.center.x,
            r.argmax.center.y,
            r.argmax.radius,
            r.ratio,
        )
    });
    let header = ["solution_id", "M", "M_floor", "N_max", "x", "y", "r", "ratio"];
    Ok(Output {
        tally: t,
        summary: json!({"fitted_c": table.fitted_c, "monotone": table.monotone}),
        artifacts: vec![csv_file("growth.csv", &header, rows)?],
    })
}

/// `bump · Re z^k` with the profile used for the Laplace weight sweep.
pub fn lap_car_field(degree: u32, resolution: usize) -> Result<ScalarField> {
    let grid = Grid2D::centered(0.75, resolution)?;
    let bump = make_bump(&BumpProfile::new(Point::ORIGIN, (0.1, 0.55), 0.018, 0.16)?, &grid)?;
    bump.mul(&AnalyticFn::harmonic(degree, Part::Real).sample(grid)?)
}

fn lap_car(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let f = lap_car_field(c.lap_degree, c.lap_resolution)?;
    let k = c.lap_degree as f64;
    let ladder: Vec<f64> = (0..c.lap_ladder_steps)
        .map(|j| k + (1.0 / 3.0) * 0.5f64.powi(j as i32))
        .collect();
    let detuned = [k - 0.1, k + 0.1];
    let mut taus: Vec<f64> = vec![c.lap_reference];
    taus.extend(&c.lap_quantized);
    taus.extend(detuned);
    taus.push(k + 2.0 / 3.0);
    taus.extend(&ladder);
    let reports: Vec<CarlemanCheckReport> = taus
        .par_iter()
        .map(|&tau| check_carleman_laplace(&f, tau, Point::ORIGIN, Measure::ScaleInvariant))
        .collect::<Result<_>>()?;
    let at = |tau: f64| {
        reports
            .iter()
            .find(|r| r.tau == tau)
            .map(c_of)
            .unwrap_or(f64::NAN)
    };
    let reference = at(c.lap_reference);
    let quantized: Vec<f64> = c.lap_quantized.iter().map(|&tau| at(tau)).collect();
    let ladder_c: Vec<f64> = ladder.iter().map(|&tau| at(tau)).collect();
    let worst_q = quantized.iter().copied().fold(0.0, f64::max);
    let best_q = quantized.iter().copied().fold(f64::INFINITY, f64::min);
    let mut t = Tally::default();
    t.assert("finite", reports.iter().all(|r| r.fitted_c.is_finite()));
    t.assert("quantized_at_most_half_reference", worst_q <= 0.5 * reference);
    t.assert("ladder_increasing", ladder_c.windows(2).all(|w| w[1] > w[0]));
    t.assert("detuned_above_quantized", detuned.iter().all(|&tau| at(tau) > best_q));
    let summary = json!({
        "reference": {"tau": c.lap_reference, "c": reference},
        "quantized": c.lap_quantized.iter().zip(&quantized).map(|(t, c)| json!({"tau": t, "c": c})).collect::<Vec<_>>(),
        "quantized_over_reference": worst_q / reference,
        "ladder": ladder.iter().zip(&ladder_c).map(|(t, c)| json!({"tau": t, "c": c})).collect::<Vec<_>>(),
    });
    let file = json!({
        "degree": c.lap_degree,
        "resolution": c.lap_resolution,
        "profile": {"plateau": [0.1, 0.55], "inner_ramp": 0.018, "outer_ramp": 0.16, "grid_half": 0.75},
        "summary": summary,
        "reports": reports,
    });
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("lap_car.json", &file)?],
    })
}

fn weight_phi(ctx: &SuiteContext) -> Result<WeightPhi> {
    WeightPhi::new(ctx.config.carleman.eps, ctx.config.carleman.r0)
}

fn interior(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let wt = weight_phi(ctx)?;
    let grid = Grid2D::centered(0.5, ctx.config.resolution)?;
    let f = make_bump(&BumpProfile::annular(Point::ORIGIN, (0.2, 0.35), 0.05)?, &grid)?;
    let sweep = dilation_sweep(&f, c.interior_tau, &wt, &c.dilations)?;
    let zero = check_carleman_interior(&ScalarField::zeros(grid), c.interior_tau, &wt)?;
    let mut t = Tally::default();
    t.assert("zero_is_vacuous", zero.vacuous && zero.fitted_c == 0.0);
    t.assert("invariant_spread_within_tol", sweep.invariant_spread <= c.dilation_tol);
    t.assert("classical_spread_larger", sweep.classical_spread > sweep.invariant_spread);
    let summary = json!({
        "tau": c.interior_tau,
        "invariant_spread": sweep.invariant_spread,
        "classical_spread": sweep.classical_spread,
        "tol": c.dilation_tol,
    });
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("dilation.json", &json!({"tau": c.interior_tau, "sweep": sweep}))?],
    })
}

/// `bump · Re z³` with the profile used for the bi-Laplace refinement check.
pub fn bilaplace_field(resolution: usize) -> Result<ScalarField> {
    let grid = Grid2D::centered(0.5, resolution)?;
    let bump = make_bump(&BumpProfile::annular(Point::ORIGIN, (0.22, 0.28), 0.1)?, &grid)?;
    bump.mul(&AnalyticFn::harmonic(3, Part::Real).sample(grid)?)
}

fn bilaplace(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let wt = weight_phi(ctx)?;
    let res = ctx.config.resolution;
    let reports: Vec<CarlemanCheckReport> = [res, 2 * res - 1]
        .par_iter()
        .map(|&n| {
            let f = bilaplace_field(n)?;
            let z = ScalarField::zeros(*f.grid());
            check_carleman_bilaplace(&f, &z, c.bilaplace_tau, &wt, c.c_tau)
        })
        .collect::<Result<_>>()?;
    let change = rel_change(reports[0].fitted_c, reports[1].fitted_c);
    let grid = Grid2D::centered(0.5, res)?;
    let g = make_bump(&BumpProfile::annular(Point::ORIGIN, (0.2, 0.35), 0.05)?, &grid)?;
    let scaling = tau_scaling(&g, &ScalarField::constant(grid, 1.0)?, c.bilaplace_tau, &wt, c.c_tau)?;
    let zero = check_carleman_bilaplace(&ScalarField::zeros(grid), &ScalarField::zeros(grid), c.bilaplace_tau, &wt, c.c_tau)?;
    let mut t = Tally::default();
    t.assert("zero_is_vacuous", zero.vacuous);
    t.assert("finite", reports.iter().all(|r| r.fitted_c.is_finite()));
    t.assert("refinement_stable", change <= c.bilaplace_refinement_tol);
    let [lo, hi] = c.bilaplace_window;
    t.assert("tau_window", scaling.growth >= lo && scaling.growth <= hi);
    let summary = json!({
        "c": reports[0].fitted_c,
        "c_refined": reports[1].fitted_c,
        "relative_change": change,
        "tol": c.bilaplace_refinement_tol,
        "tau_scaling": scaling,
        "window": c.bilaplace_window,
    });
    let file = json!({"summary": summary, "reports": reports});
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("carle2.json", &file)?],
    })
}

/// `x₂ · bump(|x|)` on `[-3.5, 3.5]²`, vanishing on the flat boundary.
pub fn boundary_field(resolution: usize, odd: bool) -> Result<ScalarField> {
    let grid = Grid2D::centered(3.5, resolution)?;
    let bump = make_bump(&BumpProfile::disk(Point::ORIGIN, 1.5, 1.0)?, &grid)?;
    if odd {
        bump.mul(&ScalarField::from_fn(grid, |p| p.y)?)
    } else {
        Ok(bump)
    }
}

fn boundary(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let psi = WeightPsi::new(c.s, c.b_n)?;
    let res = ctx.config.resolution;
    let run = |n: usize, odd: bool| {
        let v = boundary_field(n, odd)?;
        let w = ScalarField::zeros(*v.grid());
        check_carleman_boundary(&v, &w, c.boundary_tau, &psi, c.c_tau)
    };
    let coarse = run(res, true)?;
    let fine = run(2 * res - 1, true)?;
    let trace = run(res, false)?;
    let change = rel_change(coarse.fitted_c, fine.fitted_c);
    let sum_l: f64 = trace.terms.lhs.values().sum();
    let sum_r: f64 = trace.terms.rhs.values().sum();
    let bookkeeping = (sum_l - trace.lhs).abs() <= 1e-10 * trace.lhs.abs().max(1e-300)
        && (sum_r - trace.rhs).abs() <= 1e-10 * trace.rhs.abs().max(1e-300);
    let mut t = Tally::default();
    t.assert("finite", coarse.fitted_c.is_finite() && fine.fitted_c.is_finite());
    t.assert("refinement_stable", change <= c.boundary_refinement_tol);
    t.assert("itemization_sums", bookkeeping);
    let summary = json!({
        "c": coarse.fitted_c,
        "c_refined": fine.fitted_c,
        "relative_change": change,
        "tol": c.boundary_refinement_tol,
        "trace_case_c": trace.fitted_c,
    });
    let file = json!({"summary": summary, "vanishing_trace": [coarse, fine], "nonzero_trace": trace});
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("carleman_boundary.json", &file)?],
    })
}

/// Fields for the half-ball checks on `[-h, h]²`: `x₂`, or
/// `sin(x₁) sin(1.3 x₂)` when `sine` is set.
pub fn half_ball_field(half: f64, resolution: usize, sine: bool) -> Result<ScalarField> {
    let grid = Grid2D::centered(half, resolution)?;
    if sine {
        AnalyticFn::SineProduct { a: 1.0, b: 1.3 }.sample(grid)
    } else {
        ScalarField::from_fn(grid, |p| p.y)
    }
}

fn caccioppoli(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let [c4, c3, c2, c1] = c.caccioppoli_radii;
    let shells = ShellRadii::new(c4, c3, c2, c1)?;
    let corpus = ctx.corpus()?;
    let interior: Vec<(String, f64, f64, f64, f64)> = corpus
        .par_iter()
        .map(|m| {
            let r = check_caccioppoli_interior(&m.solution.u, &m.solution.w, Point::ORIGIN, 1.0, &shells)?;
            Ok((m.id.clone(), m.solution.m, r.lhs, r.rhs, r.fitted_c))
        })
        .collect::<Result<_>>()?;
    let res = ctx.config.resolution;
    let bdry = |sine: bool, n: usize| {
        let u = half_ball_field(2.5, n, sine)?;
        check_caccioppoli_boundary(&u, &ScalarField::zeros(*u.grid()))
    };
    let linear = bdry(false, res)?;
    let sine = bdry(true, res)?;
    let sine_fine = bdry(true, 2 * res - 1)?;
    let oracle = caccioppoli_linear_oracle();
    let sine_change = rel_change(sine.fitted_c, sine_fine.fitted_c);
    let mut t = Tally::default();
    t.assert("interior_finite", interior.iter().all(|r| r.4.is_finite()));
    t.assert("linear_matches_closed_form", rel_change(oracle, linear.fitted_c) <= 0.02);
    t.assert("sine_refinement_stable", sine_change <= c.boundary_refinement_tol);
    let worst = interior.iter().map(|r| r.4).fold(0.0, f64::max);
    let summary = json!({
        "interior_max_c": worst,
        "linear_c": linear.fitted_c,
        "linear_closed_form": oracle,
        "sine_c": sine.fitted_c,
        "sine_c_refined": sine_fine.fitted_c,
        "sine_relative_change": sine_change,
    });
    let file = json!({"summary": summary, "linear": linear, "sine": [sine, sine_fine]});
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![
            csv_file("caccioppoli.csv", &["solution_id", "M", "lhs", "rhs", "c"], interior)?,
            json_file("caccioppoli.json", &file)?,
        ],
    })
}

fn propagation(ctx: &SuiteContext) -> Result<Output> {
    let c = &ctx.config.carleman;
    let psi = WeightPsi::new(c.s, c.b_n)?;
    let ex = propagation_exponents(&psi)?;
    let reference = propagation_exponents(&WeightPsi::new(5.0, 0.1)?)?;
    let [p0, p1, kappa] = PROPAGATION_REFERENCE;
    let res = ctx.config.resolution;
    let run = |u: ScalarField| {
        let w = ScalarField::zeros(*u.grid());
        check_propagation(&u, &w, &psi)
    };
    let linear = run(half_ball_field(2.5, res, false)?)?;
    let sine = run(half_ball_field(2.5, res, true)?)?;
    let zero = run(ScalarField::zeros(Grid2D::centered(2.5, res)?))?;
    let mut t = Tally::default();
    t.assert("p0_reference", (reference.p0 - p0).abs() <= 1e-6);
    t.assert("p1_reference", (reference.p1 - p1).abs() <= 1e-6);
    t.assert("kappa_formula", (reference.kappa - p1 / (p1 + p0)).abs() <= 1e-6);
    t.assert("kappa_reference", (reference.kappa - kappa).abs() <= 5e-6);
    t.assert("exponents_positive", ex.p0 > 0.0 && ex.p1 > 0.0 && ex.kappa > 0.0 && ex.kappa < 1.0);
    t.assert("zero_is_vacuous", zero.vacuous);
    t.assert(
        "finite_constants",
        [&linear, &sine].iter().all(|r| !r.violation_candidate && r.constant.is_finite()),
    );
    let summary = json!({
        "exponents": ex,
        "reference_exponents": reference,
        "linear_constant": linear.constant,
        "sine_constant": sine.constant,
    });
    let file = json!({"summary": summary, "linear": linear, "sine": sine, "zero": zero});
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![json_file("propagation.json", &file)?],
    })
}

fn nodal_length(ctx: &SuiteContext) -> Result<Output> {
    let n = &ctx.config.nodal;
    let mut t = Tally::default();
    let mut lines = Vec::new();
    let mut sines = Vec::new();
    let (mut e_line, mut e_sine) = (Vec::new(), Vec::new());
    for &res in &n.resolutions {
        let g = Grid2D::centered(1.0, res)?;
        let h = g.spacing();
        let u = ScalarField::from_fn(g, |p| p.x)?;
        let len = extract_nodal_set(&u, &Cube::centered(Point::ORIGIN, 2.0)?)?.total_length;
        let err = (len - 2.0).abs();
        t.assert(&format!("line:{res}"), err <= 2.0 * h * (1.0 + 1e-9));
        lines.push(json!({"resolution": res, "h": h, "length": len, "error": err}));
        e_line.push((h, err));

        let g = Grid2D::square(0.0, 0.0, 1.0, res)?;
        let h = g.spacing();
        let u = AnalyticFn::SineProduct { a: 2.0 * PI, b: 2.0 * PI }.sample(g)?;
        let len = extract_nodal_set(&u, &Cube::new(Point::ORIGIN, 1.0)?)?.total_length;
        let err = (len - 2.0).abs();
        t.assert(&format!("sine:{res}"), err <= 4.0 * h * (1.0 + 1e-9));
        sines.push(json!({"resolution": res, "h": h, "length": len, "error": err}));
        e_sine.push((h, err));
    }
    let rate_line = refinement_rate(&e_line)?;
    let rate_sine = refinement_rate(&e_sine)?;
    let [lo, hi] = n.rate_window;
    t.assert("rate_line", rate_line >= lo && rate_line <= hi);
    t.assert("rate_sine", rate_sine >= lo && rate_sine <= hi);

    let g = Grid2D::centered(1.0, n.cubic_resolution)?;
    let cubic = extract_nodal_set(&AnalyticFn::harmonic(3, Part::Real).sample(g)?, &Cube::centered(Point::ORIGIN, 2.0)?)?;
    let oracle = cubic_nodal_length();
    let cubic_err = (cubic.total_length - oracle).abs();
    t.assert("cubic", cubic_err <= n.cubic_tol);
    let summary = json!({
        "rate_line": rate_line,
        "rate_sine": rate_sine,
        "cubic_length": cubic.total_length,
        "cubic_oracle": oracle,
        "cubic_error": cubic_err,
    });
    let file = json!({
        "line": lines,
        "sine": sines,
        "cubic": {"resolution": n.cubic_resolution, "length": cubic.total_length, "oracle": oracle, "segments": cubic.segments.len(), "saddles": cubic.saddles, "nudged": cubic.nudged},
        "summary": summary,
    });
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![
            json_file("nodal_oracles.json", &file)?,
            bytes_file("nodal_cubic_segments.csv", |b| cubic.write_csv(b))?,
            json_file("nodal_cubic_polylines.json", &cubic.polyline_json())?,
        ],
    })
}

fn scaling(ctx: &SuiteContext) -> Result<Output> {
    let n = &ctx.config.nodal;
    // Shifted so that no zero line sits on a grid line or on ∂Q.
    let grid = Grid2D::square(0.02, 0.02, 1.0, n.scaling_resolution)?;
    let q = Cube::new(Point::new(0.02, 0.02), 1.0)?;
    let rows: Vec<(u32, f64, f64, f64)> = n
        .scaling_multiples
        .par_iter()
        .map(|&k| {
            let a = k as f64 * PI;
            let f = AnalyticFn::SineProduct { a, b: a };
            let len = extract_nodal_set(&f.sample(grid)?, &q)?.total_length;
            Ok((k, a, f.potential(), len))
        })
        .collect::<Result<_>>()?;
    let fit = scaling_exponent_fit(&rows.iter().map(|r| (r.2, r.3)).collect::<Vec<_>>())?;
    let mut t = Tally::default();
    t.assert("slope_quarter", (fit.slope - 0.25).abs() <= n.scaling_tol);
    Ok(Output {
        tally: t,
        summary: json!({"fit": fit, "tol": n.scaling_tol}),
        artifacts: vec![csv_file("scaling.csv", &["multiple", "a", "M", "length"], rows)?],
    })
}

fn combinatorics_plan(ctx: &SuiteContext) -> ProbePlan {
    let k = &ctx.config.combinatorics;
    ProbePlan::new(k.probe_centers, k.probe_radii)
}

fn field_dump(name: &str, u: &ScalarField) -> Result<Artifact> {
    bytes_file(name, |b| write_nlf1(u, b))
}

type PartitionRow = (String, usize, f64, f64, f64, bool, bool, bool, bool);

fn partition_rows_file(name: &str, runs: &[(String, PartitionReport)]) -> Result<Artifact> {
    let header = ["solution_id", "A", "i", "j", "x0", "y0", "side", "index", "above_threshold"];
    let rows = runs.iter().flat_map(|(id, r)| {
        r.rows
            .iter()
            .map(move |s| (id.clone(), r.a, s.i, s.j, s.cube.min.x, s.cube.min.y, s.cube.side, s.index, s.above))
    });
    csv_file(name, &header, rows)
}

fn hyperplane(ctx: &SuiteContext) -> Result<Output> {
    let k = &ctx.config.combinatorics;
    let q = Cube::centered(Point::ORIGIN, 2.0 * k.cube_half)?;
    let plan = combinatorics_plan(ctx);
    let corpus = ctx.corpus()?;
    let mut runs = Vec::new();
    for m in corpus {
        for &a in &k.hyperplane_a {
            runs.push((m.id.clone(), hyperplane_lemma_check(&m.solution.u, &q, a, None, k.n0, &plan)?));
        }
    }
    let mut t = Tally::default();
    let mut dumps = Vec::new();
    let mut bare_failures = 0;
    let mut dumped = std::collections::BTreeSet::new();
    let mut rows: Vec<PartitionRow> = Vec::new();
    for (idx, (id, r)) in runs.iter().enumerate() {
        let bare = r.precondition && r.cube_index > 0.0;
        let verdict = match (r.applicable, r.holds) {
            (true, true) => "pass",
            (true, false) => "fail",
            _ => "flagged",
        };
        match verdict {
            "pass" => t.runs(1, 0, 0),
            "fail" => t.runs(0, 1, 0),
            _ => t.flag(1),
        }
        if bare && !r.holds {
            bare_failures += 1;
        }
        if !r.holds {
            dumps.push(json_file(&format!("dumps/hyperplane-{id}-A{}.json", r.a), r)?);
            if dumped.insert(id.clone()) {
                dumps.push(field_dump(&format!("dumps/hyperplane-{id}.nlf1"), &corpus[idx / k.hyperplane_a.len()].solution.u)?);
            }
        }
        rows.push((id.clone(), r.a, r.cube_index, r.extreme, r.threshold, r.precondition, r.applicable, r.holds, bare && !r.holds));
    }
    let applicable = runs.iter().filter(|(_, r)| r.applicable).count();
    t.assertions.insert("all_applicable_runs_hold".into(), t.counts.fail == 0);
    let summary = json!({
        "n0": k.n0,
        "runs": runs.len(),
        "applicable": applicable,
        "failures": t.counts.fail,
        "bare_failures": bare_failures,
        "pass_rate_applicable": if applicable > 0 { t.counts.pass as f64 / applicable as f64 } else { f64::NAN },
    });
    let header = ["solution_id", "A", "N_Q", "row_min", "threshold", "precondition", "applicable", "holds", "bare_failure"];
    let mut artifacts = vec![
        csv_file("hyperplane.csv", &header, rows)?,
        partition_rows_file("hyperplane_subcubes.csv", &runs)?,
    ];
    artifacts.extend(dumps);
    Ok(Output {
        tally: t,
        summary,
        artifacts,
    })
}

fn bad_cubes(ctx: &SuiteContext) -> Result<Output> {
    let k = &ctx.config.combinatorics;
    let q = Cube::centered(Point::ORIGIN, 2.0 * k.cube_half)?;
    let plan = combinatorics_plan(ctx);
    let corpus = ctx.corpus()?;
    let mut runs = Vec::new();
    for m in corpus {
        for &a in &k.bad_cube_a {
            runs.push((m.id.clone(), bad_cube_count(&m.solution.u, &q, a, k.n0, k.c, &plan)?));
        }
    }
    let mut t = Tally::default();
    let mut dumps = Vec::new();
    let mut dumped = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for (idx, (id, r)) in runs.iter().enumerate() {
        t.runs(r.holds as usize, !r.holds as usize, 0);
        if !r.holds {
            dumps.push(json_file(&format!("dumps/bad_cubes-{id}-A{}.json", r.a), r)?);
            if dumped.insert(id.clone()) {
                dumps.push(field_dump(&format!("dumps/bad_cubes-{id}.nlf1"), &corpus[idx / k.bad_cube_a.len()].solution.u)?);
            }
        }
        rows.push((id.clone(), r.a, r.cube_index, r.threshold, r.count_above, 0.5 * r.a as f64, r.extreme, r.holds));
    }
    t.assertions.insert("all_counts_within_half_a".into(), t.counts.fail == 0);
    let summary = json!({"n0": k.n0, "c": k.c, "runs": runs.len(), "failures": t.counts.fail});
    let header = ["solution_id", "A", "N_Q", "threshold", "count_above", "limit", "max_index", "holds"];
    let mut artifacts = vec![
        csv_file("bad_cubes.csv", &header, rows)?,
        partition_rows_file("bad_cubes_subcubes.csv", &runs)?,
    ];
    artifacts.extend(dumps);
    Ok(Output {
        tally: t,
        summary,
        artifacts,
    })
}

fn covering(ctx: &SuiteContext) -> Result<Output> {
    let k = &ctx.config.combinatorics;
    let stream_seed = ctx.config.seed ^ SEED_SALT_SIMPLEX;
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    let simplices: Vec<_> = (0..k.simplex_count).map(|_| random_simplex(&mut rng, k.min_width)).collect();
    let reports = simplices
        .par_iter()
        .map(|s| simplex_covering_check(s, k.k, k.tau_hat, k.samples))
        .collect::<Result<Vec<_>>>()?;
    let equilateral = simplex_metrics([Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.5, 3f64.sqrt() / 2.0)]);
    let eq = simplex_covering_check(&equilateral, k.k, k.tau_hat, k.samples)?;
    let untouched = simplices
        .iter()
        .map(|s| simplex_covering_check(s, k.k, 0.0, k.samples.min(10_000)).map(|r| r.pass))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::default();
    let fails = reports.iter().filter(|r| !r.pass).count();
    t.runs(reports.len() - fails, fails, 0);
    t.assertions.insert("all_random_simplices_covered".into(), fails == 0);
    t.assert("equilateral", eq.pass);
    t.assert("zero_tau_hat_covers", untouched.iter().all(|&p| p));
    let rows = reports.iter().enumerate().map(|(i, r)| {
        let v = r.simplex.vertices;
        (i, v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y, r.simplex.relative_width, r.rho, r.uncovered, r.worst_ratio, r.nesting_margin, r.pass)
    });
    let header = ["index", "x1", "y1", "x2", "y2", "x3", "y3", "w", "rho", "uncovered", "worst_ratio", "nesting_margin", "pass"];
    let summary = json!({
        "simplices": reports.len(),
        "failures": fails,
        "equilateral_worst_ratio": eq.worst_ratio,
        "max_worst_ratio": reports.iter().map(|r| r.worst_ratio).fold(0.0, f64::max),
        "stream_seed": stream_seed,
    });
    let mut artifacts = vec![csv_file("covering.csv", &header, rows)?];
    if fails > 0 {
        let failed: Vec<_> = reports.iter().enumerate().filter(|(_, r)| !r.pass).collect();
        artifacts.push(json_file(
            "dumps/covering_failures.json",
            &json!({"stream_seed": stream_seed, "k": k.k, "tau_hat": k.tau_hat, "samples": k.samples, "min_width": k.min_width, "failures": failed}),
        )?);
    }
    Ok(Output {
        tally: t,
        summary,
        artifacts,
    })
}

fn simplex_lemma(ctx: &SuiteContext) -> Result<Output> {
    let k = &ctx.config.combinatorics;
    let side = k.simplex_scale;
    let params = SimplexLemmaParams {
        k: k.k,
        c_big: k.c_big,
        c: k.c,
        r: 0.5 * k.k * side,
        n0: k.n0,
    };
    let equilateral = |c: Point| {
        let h = side * 3f64.sqrt() / 2.0;
        simplex_metrics([
            Point::new(c.x - side / 2.0, c.y - h / 3.0),
            Point::new(c.x + side / 2.0, c.y - h / 3.0),
            Point::new(c.x, c.y + 2.0 * h / 3.0),
        ])
    };
    let positions = [Point::ORIGIN, Point::new(0.21, 0.13)];
    let corpus = ctx.corpus()?;
    let reports: Vec<(String, _)> = corpus
        .par_iter()
        .map(|m| {
            positions
                .iter()
                .map(|&p| Ok((m.id.clone(), simplex_lemma_check(&m.solution.u, &equilateral(p), k.min_width, None, &params)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for (id, r) in &reports {
        let (label, reason) = match &r.verdict {
            SimplexVerdict::Pass => ("pass", String::new()),
            SimplexVerdict::Fail => ("fail", String::new()),
            SimplexVerdict::VacuousMargin => ("vacuous_margin", String::new()),
            SimplexVerdict::Skipped { reason } => ("skipped", reason.clone()),
        };
        match r.verdict {
            SimplexVerdict::Pass => t.runs(1, 0, 0),
            SimplexVerdict::Fail => t.runs(0, 1, 0),
            _ => t.flag(1),
        }
        let b = r.simplex.barycenter;
        rows.push((
            id.clone(),
            b.x,
            b.y,
            r.n,
            r.vertex_indices.iter().copied().fold(f64::INFINITY, f64::min),
            r.barycenter_index.unwrap_or(f64::NAN),
            r.margin.unwrap_or(f64::NAN),
            label,
            reason,
        ));
    }
    let failures: Vec<_> = reports.iter().filter(|(_, r)| r.verdict == SimplexVerdict::Fail).collect();
    t.assertions.insert("no_failures".into(), failures.is_empty());
    let header = ["solution_id", "x0", "y0", "N", "min_vertex_index", "barycenter_index", "margin", "verdict", "reason"];
    let mut artifacts = vec![csv_file("simplex_lemma.csv", &header, rows)?];
    if !failures.is_empty() {
        artifacts.push(json_file("dumps/simplex_lemma_failures.json", &failures)?);
    }
    Ok(Output {
        tally: t,
        summary: json!({"params": params, "runs": reports.len(), "failures": failures.len()}),
        artifacts,
    })
}

/// Deterministic `(N, N₀, A, c)` grid for the recursion comparison.
pub fn recursion_grid(points: usize) -> Vec<(f64, f64, f64, f64)> {
    const N0: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];
    const A: [f64; 4] = [2.0, 5.0, 10.0, 20.0];
    const C: [f64; 5] = [0.05, 0.1, 0.2, 0.5, 1.0];
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (0..points)
        .map(|i| {
            let n0 = N0[i % 5];
            let a = A[(i / 5) % 4];
            let c = C[(i / 20) % 5];
            let frac = (i as f64 * golden).fract();
            (n0 * (1.0 + 20.0 * frac), n0, a, c)
        })
        .collect()
}

fn recursion(ctx: &SuiteContext) -> Result<Output> {
    let b = &ctx.config.bound;
    let reports = recursion_grid(b.grid_points)
        .into_iter()
        .map(|(n, n0, a, c)| nodal_bound_recursion(n, n0, a, c, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let example = nodal_bound_recursion(1.1f64.powi(3), 1.0, 10.0, 0.1, 1.0)?;
    let mut t = Tally::default();
    let agree = reports.iter().filter(|r| r.agrees()).count();
    t.runs(agree, reports.len() - agree, 0);
    t.assertions.insert("loop_agrees_with_closed_form".into(), agree == reports.len());
    t.assert("three_steps_example", example.steps == 3 && (example.iterated - 8000.0).abs() < 1e-9);
    let rows = reports
        .iter()
        .map(|r| (r.n, r.n0, r.a, r.c, r.steps, r.iterated, r.closed_form, r.iterated / r.closed_form, r.agrees()));
    let header = ["N", "N0", "A", "c", "steps", "iterated", "closed_form", "ratio", "agrees"];
    Ok(Output {
        tally: t,
        summary: json!({"points": reports.len(), "agree": agree, "example": example}),
        artifacts: vec![csv_file("recursion.csv", &header, rows)?],
    })
}

fn global_bound(ctx: &SuiteContext) -> Result<Output> {
    let b = &ctx.config.bound;
    let ledgers = b
        .m_values
        .iter()
        .map(|&m| assemble_global_bound(m, b.a, b.c, b.cover_constant))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::default();
    t.assert("beta_above_quarter", ledgers.iter().all(|l| l.beta > 0.25));
    t.assert("beta_identity", ledgers.iter().all(|l| (l.beta - (l.alpha0 / 3.0 + 0.25)).abs() <= 1e-12 * l.beta));
    let unit = assemble_global_bound(1.0, b.a, b.c, b.cover_constant)?;
    t.assert("unit_potential", unit.bound == b.cover_constant);
    let summary = json!({"a": b.a, "c": b.c, "alpha0": unit.alpha0, "beta": unit.beta});
    let file = json_file("bound_ledger.json", &json!({"summary": summary, "ledgers": ledgers}))?;
    Ok(Output {
        tally: t,
        summary,
        artifacts: vec![file],
    })
}
