//! Acceptance criteria 1–11, evaluated at their stated tolerances from the
//! reports of the default suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reproduced faithfully and reported
//! as failing; they do not fail the target. Any other failure does.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nodal_lab::lab::{run_checks, run_suite, CheckId, ExperimentConfig, RunManifest, SuiteContext};
use serde_json::Value;

/// The factor-2 quantization gain (5) and the covering fact at K = 4 (9)
/// do not hold for the discrete objects; see the README.
const KNOWN_RED: [u8; 2] = [5, 9];

type Row = BTreeMap<String, String>;

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        self.notes.push(if ok { note } else { format!("!{note}") });
        self.pass &= ok;
    }
}

fn json(dir: &Path, name: &str) -> Value {
    let bytes = std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn rows(dir: &Path, name: &str) -> Vec<Row> {
    let mut r = csv::Reader::from_path(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    r.deserialize().map(|row| row.unwrap_or_else(|e| panic!("{name}: {e}"))).collect()
}

fn num(row: &Row, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

fn flag(row: &Row, key: &str) -> bool {
    row[key] == "true"
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn c1_solver(dir: &Path, solver_time: Duration) -> Verdict {
    let mut v = Verdict::new();
    let s = json(dir, "solver.json");
    let ratio = f(&s["order_ratio"]);
    v.check((3.6..=4.4).contains(&ratio), format!("order ratio {ratio:.4}"));
    let res: Vec<(String, f64)> = s["generator_residuals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["id"].as_str().unwrap().to_string(), f(&g["residual"])))
        .collect();
    let worst = res.iter().map(|r| r.1).fold(0.0, f64::max);
    v.check(!res.is_empty() && res.iter().all(|r| r.1 <= 0.05), format!("max generator residual {worst:.2e}"));
    let secs = solver_time.as_secs_f64();
    v.check(secs <= 30.0, format!("{secs:.1} s"));
    v
}

fn c2_homogeneity(dir: &Path, manifest: &RunManifest) -> Verdict {
    let mut v = Verdict::new();
    let res = f(&manifest.outcome(CheckId::Homogeneity).unwrap().summary["resolution"]);
    v.check(res == 513.0, format!("resolution {res}"));
    let table = rows(dir, "homogeneity.csv");
    let mut seen = BTreeSet::new();
    let mut worst: f64 = 0.0;
    for r in &table {
        let k = num(r, "k");
        worst = worst.max((num(r, "N") - k).abs());
        seen.insert((k as u32, (num(r, "r") * 100.0).round() as u32));
    }
    let expected: BTreeSet<_> = (1..=6).flat_map(|k| [(k, 5), (k, 10), (k, 20)]).collect();
    v.check(seen == expected, format!("{} (k, r) pairs", seen.len()));
    v.check(worst <= 0.05, format!("max |N − k| {worst:.2e}"));
    v
}

fn c3_monotonicity(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let fit = json(dir, "monotonicity_fit.json");
    let n0 = f(&fit["fit"]["n0"]);
    let ts: BTreeSet<u64> = fit["t"].as_array().unwrap().iter().map(|t| f(t) as u64).collect();
    v.check(ts == BTreeSet::from([3, 4, 6, 8]) && f(&fit["delta"]) == 0.1, "t ∈ {3,4,6,8}, δ = 0.1");
    let mut members = BTreeSet::new();
    let mut claims = 0;
    for name in ["monotonicity.csv", "monotonicity_validation.csv"] {
        let table = rows(dir, name);
        members.extend(table.iter().map(|r| r["solution_id"].clone()));
        let constant_fail = table.iter().filter(|r| !flag(r, "pass")).count();
        v.check(constant_fail == 0, format!("{name}: {constant_fail} fail with the fitted C"));
        // N₀ is the largest index at which the constant-free form failed
        // on the fit set, so its claim is for N strictly above it.
        let big: Vec<&Row> = table.iter().filter(|r| num(r, "N") > n0).collect();
        let sharp_fail = big.iter().filter(|r| num(r, "lower_margin") < 0.0 || num(r, "upper_margin") < 0.0).count();
        claims += big.len();
        v.check(sharp_fail == 0, format!("{name}: {sharp_fail}/{} sharp-form failures", big.len()));
    }
    v.check(members.len() == 16, format!("{} members", members.len()));
    let unexplained = fit["unexplained"].as_array().map_or(usize::MAX, Vec::len);
    v.check(unexplained == 0, format!("C {:.4}, N₀ {n0:.3}, {claims} sharp claims, {unexplained} unexplained", f(&fit["fit"]["c"])));
    v
}

fn c4_three_ball(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let s = json(dir, "three_ball.json");
    let (c, cf) = (f(&s["constant"]), f(&s["constant_refined"]));
    let change = (cf - c).abs() / c;
    v.check(c.is_finite() && cf.is_finite() && c > 0.0, format!("C {c:.4} → {cf:.4}"));
    v.check(change <= 0.1, format!("change {:.2}%", 100.0 * change));
    let table = rows(dir, "three_ball.csv");
    let theta_ok = table.iter().all(|r| {
        let t = num(r, "theta");
        t > 0.0 && t < 1.0 && num(r, "constant").is_finite() && num(r, "constant_refined").is_finite()
    });
    v.check(!table.is_empty() && theta_ok, format!("θ ∈ (0,1) on {} rows", table.len()));
    v
}

fn c5_quantization(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let s = json(dir, "lap_car.json");
    v.check(s["degree"] == 5, "degree-5 harmonic");
    let reports = s["reports"].as_array().unwrap();
    let at = |tau: f64| {
        reports
            .iter()
            .find(|r| (f(&r["tau"]) - tau).abs() < 1e-12)
            .map(|r| f(&r["fitted_C"]))
            .unwrap_or(f64::NAN)
    };
    let reference = at(5.1);
    for tau in [5.5, 5.33] {
        let ratio = at(tau) / reference;
        v.check(ratio <= 0.5, format!("C({tau})/C(5.1) = {ratio:.3}"));
    }
    let ladder: Vec<f64> = (0..5).map(|j| at(5.0 + (1.0 / 3.0) * 0.5f64.powi(j))).collect();
    let increasing = ladder.iter().all(|c| c.is_finite()) && ladder.windows(2).all(|w| w[1] > w[0]);
    v.check(increasing, format!("ladder {:?}", ladder.iter().map(|c| format!("{c:.4}")).collect::<Vec<_>>()));
    v
}

fn c6_rescaling(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let s = json(dir, "dilation.json")["sweep"].clone();
    let lambdas: Vec<f64> = s["lambdas"].as_array().unwrap().iter().map(f).collect();
    v.check(lambdas == [1.0, 0.5, 0.25], "λ ∈ {1, 1/2, 1/4}");
    let spread = |key: &str| {
        let c: Vec<f64> = s[key].as_array().unwrap().iter().map(f).collect();
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / lo
    };
    let (inv, cls) = (spread("invariant"), spread("classical"));
    v.check(inv <= 0.1, format!("invariant spread {:.2}%", 100.0 * inv));
    v.check(cls > inv, format!("other form {:.2}%", 100.0 * cls));
    v
}

fn c7_nodal(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let s = json(dir, "nodal_oracles.json");
    let series = |key: &str, allowance: f64, v: &mut Verdict| {
        let pts: Vec<(f64, f64)> = s[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (f(&p["h"]), f(&p["error"])))
            .collect();
        let ok = pts.iter().all(|&(h, e)| e <= allowance * h);
        let worst = pts.iter().map(|&(h, e)| e / h).fold(0.0, f64::max);
        v.check(ok, format!("{key} error ≤ {worst:.2}h"));
        let rate = log_slope(&pts);
        v.check((0.8..=1.2).contains(&rate), format!("{key} rate {rate:.3}"));
    };
    series("line", 2.0, &mut v);
    series("sine", 4.0, &mut v);
    let cubic = f(&s["cubic"]["length"]);
    v.check((cubic - 6.619).abs() <= 0.05, format!("Re z³ length {cubic:.4}"));
    v
}

fn c8_scaling(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let pts: Vec<(f64, f64)> = rows(dir, "scaling.csv").iter().map(|r| (num(r, "M"), num(r, "length"))).collect();
    let slope = log_slope(&pts);
    v.check(pts.len() >= 3 && (slope - 0.25).abs() <= 0.02, format!("slope {slope:.4} over {} members", pts.len()));
    v
}

fn c9_combinatorics(dir: &Path, manifest: &RunManifest, config: &ExperimentConfig) -> Verdict {
    let mut v = Verdict::new();
    let hyper = rows(dir, "hyperplane.csv");
    let a_set: BTreeSet<u64> = hyper.iter().map(|r| num(r, "A") as u64).collect();
    v.check(a_set == BTreeSet::from([8, 12, 16]), "A ∈ {8,12,16}");
    let applicable: Vec<&Row> = hyper.iter().filter(|r| flag(r, "applicable")).collect();
    let held = applicable.iter().filter(|r| flag(r, "holds")).count();
    let bare = hyper.iter().filter(|r| flag(r, "bare_failure")).count();
    v.check(
        !applicable.is_empty() && held == applicable.len(),
        format!("hyperplane {held}/{} applicable of {} ({bare} fail with N₀ = 0)", applicable.len(), hyper.len()),
    );
    let bad = rows(dir, "bad_cubes.csv");
    let bad_ok = bad.iter().filter(|r| num(r, "count_above") <= num(r, "A") / 2.0).count();
    v.check(!bad.is_empty() && bad_ok == bad.len(), format!("bad cubes {bad_ok}/{}", bad.len()));
    let k = &config.combinatorics;
    v.check(k.samples >= 100_000 && k.k == 4.0 && k.tau_hat == 0.05, "10⁵ samples, K = 4, τ̂ = 0.05");
    let cover = rows(dir, "covering.csv");
    let wide = cover.iter().all(|r| num(r, "w") > 0.3);
    let covered = cover.iter().filter(|r| flag(r, "pass")).count();
    v.check(cover.len() == 50 && wide, format!("{} simplices, w > 0.3", cover.len()));
    v.check(covered == cover.len(), format!("covering {covered}/{}", cover.len()));
    let listed: BTreeSet<&str> = manifest.files.iter().map(|e| e.path.as_str()).collect();
    let mut dumps = true;
    if covered < cover.len() {
        dumps &= listed.contains("dumps/covering_failures.json");
    }
    for r in hyper.iter().filter(|r| flag(r, "bare_failure") || (flag(r, "applicable") && !flag(r, "holds"))) {
        let id = &r["solution_id"];
        dumps &= listed.contains(format!("dumps/hyperplane-{id}-A{}.json", r["A"]).as_str());
        dumps &= listed.contains(format!("dumps/hyperplane-{id}.nlf1").as_str());
    }
    v.check(dumps, "every failure dumped");
    v
}

fn c10_ledger(dir: &Path) -> Verdict {
    let mut v = Verdict::new();
    let rec = rows(dir, "recursion.csv");
    let within = rec
        .iter()
        .filter(|r| {
            let band = 2.0 * num(r, "A");
            let ratio = num(r, "iterated") / num(r, "closed_form");
            ratio <= band && ratio >= 1.0 / band
        })
        .count();
    v.check(rec.len() == 100 && within == 100, format!("recursion {within}/{}", rec.len()));
    let ledger = json(dir, "bound_ledger.json");
    let ledgers = ledger["ledgers"].as_array().unwrap();
    let beta_ok = ledgers.iter().all(|l| {
        let (a, c, beta) = (f(&l["a"]), f(&l["c"]), f(&l["beta"]));
        let alpha0 = (2.0 * a).ln() / (1.0 + c).ln();
        beta > 0.25 && (beta - (alpha0 / 3.0 + 0.25)).abs() <= 1e-9 * beta
    });
    v.check(!ledgers.is_empty() && beta_ok, format!("β = α₀/3 + 1/4 > 1/4 on {} ledgers", ledgers.len()));
    let e = json(dir, "propagation.json")["summary"]["exponents"].clone();
    let (p0, p1, kappa) = (f(&e["p0"]), f(&e["p1"]), f(&e["kappa"]));
    let (r0, r1, rk) = (0.003314, 0.995913, 0.99668);
    v.check((p0 - r0).abs() <= 1e-6 && (p1 - r1).abs() <= 1e-6, format!("p₀ {p0:.7}, p₁ {p1:.7}"));
    // κ is quoted to five decimals: the quoted p's fix it to 1e-6 and the
    // quoted κ to half its last digit.
    let from_quoted = r1 / (r1 + r0);
    v.check(
        (kappa - from_quoted).abs() <= 1e-6 && (kappa - rk).abs() <= 5e-6,
        format!("κ {kappa:.7}"),
    );
    v
}

fn c11_determinism(a: &RunManifest, b: &RunManifest, first_run: Duration) -> Verdict {
    let mut v = Verdict::new();
    v.check(a.report_digest == b.report_digest && a.files == b.files, format!("digest {}", &a.report_digest[..16]));
    v.check(a.files.len() >= 12, format!("{} report files", a.files.len()));
    let secs = first_run.as_secs_f64();
    v.check(secs <= 600.0, format!("suite {secs:.0} s"));
    v
}

fn main() -> ExitCode {
    let config = ExperimentConfig::default();
    let solver_dir = tempfile::tempdir().expect("tempdir");
    let ctx = SuiteContext::new(config.clone()).expect("default config is valid");
    let t = Instant::now();
    run_checks(&ctx, &[CheckId::Solver], solver_dir.path()).expect("solver check runs");
    let solver_time = t.elapsed();
    drop(ctx);

    let first = tempfile::tempdir().expect("tempdir");
    let second = tempfile::tempdir().expect("tempdir");
    let t = Instant::now();
    let a = run_suite(&config, first.path()).expect("suite runs");
    let first_run = t.elapsed();
    let b = run_suite(&config, second.path()).expect("suite runs");
    let dir = first.path();

    let results = [
        (1, "solver order and residuals", c1_solver(dir, solver_time)),
        (2, "doubling homogeneity", c2_homogeneity(dir, &a)),
        (3, "monotonicity suite", c3_monotonicity(dir)),
        (4, "three-ball constant", c4_three_ball(dir)),
        (5, "carleman quantization", c5_quantization(dir)),
        (6, "rescaling invariance", c6_rescaling(dir)),
        (7, "nodal length oracles", c7_nodal(dir)),
        (8, "scaling exponent", c8_scaling(dir)),
        (9, "combinatorics", c9_combinatorics(dir, &a, &config)),
        (10, "bound ledger", c10_ledger(dir)),
        (11, "determinism", c11_determinism(&a, &b, first_run)),
    ];
    let mut unexpected = 0;
    for (id, name, v) in &results {
        let red = KNOWN_RED.contains(id);
        let tag = match (v.pass, red) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known red)",
            (false, false) => "FAIL",
        };
        if !v.pass && !red {
            unexpected += 1;
        }
        println!("criterion {id:>2} {tag:<16} {name}: {}", v.notes.join("; "));
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
