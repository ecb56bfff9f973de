use std::f64::consts::PI;

use nodal_lab::carleman::{
    check_caccioppoli_boundary, check_caccioppoli_interior, check_carleman_laplace, propagation_exponents, tau_admissible,
    Measure, ShellRadii, TauLemma, WeightPhi, WeightPsi,
};
use nodal_lab::field::{make_bump, BumpProfile, Grid2D, Point, ScalarField};
use nodal_lab::lab::runs::{caccioppoli_linear_oracle, half_ball_field};
use nodal_lab::solution::{AnalyticFn, Part};
use proptest::prelude::*;

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn radial_laplace_estimate_matches_one_dimensional_integrals() {
    let profile = BumpProfile::annular(Point::ORIGIN, (0.2, 0.4), 0.1).unwrap();
    let f = make_bump(&profile, &Grid2D::centered(0.75, 513).unwrap()).unwrap();
    let tau = 2.5;
    let rep = check_carleman_laplace(&f, tau, Point::ORIGIN, Measure::ScaleInvariant).unwrap();

    let g = |r: f64| profile.value(r);
    let d = 1e-4;
    let g1 = |r: f64| (g(r + d) - g(r - d)) / (2.0 * d);
    let g2 = |r: f64| (g(r + d) - 2.0 * g(r) + g(r - d)) / (d * d);
    // ‖r^{k−τ−1} h‖ over the plane for radial h.
    let norm = |k: f64, h: &dyn Fn(f64) -> f64| {
        let (a, b) = (profile.inner_zero(), profile.support_radius());
        simpson(|r| 2.0 * PI * r * (r.powf(k - tau - 1.0) * h(r)).powi(2), a, b, 20_000).sqrt()
    };
    let lhs = tau * norm(0.0, &g) + norm(1.0, &|r| g1(r).abs());
    let rhs = norm(2.0, &|r| g2(r) + g1(r) / r);
    let oracle = lhs / rhs;
    assert!((rep.fitted_c / oracle - 1.0).abs() < 0.02, "grid {} vs radial {oracle}", rep.fitted_c);
}

/// `Σ_{|α|≤3}‖r^{|α|}∂^α Re z³‖` over `A(a, b)` and `‖Re z³‖` over `A(c, d)`.
fn cubic_caccioppoli_oracle(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let shell = |lo: f64, hi: f64| (hi.powi(8) - lo.powi(8)) / 8.0;
    // ∂^α z³ = 3!/(3−|α|)! · i^{α₂} · z^{3−|α|}; Re of a nonconstant monomial
    // averages cos² to 1/2 over the circle.
    let weights = [1.0, 3.0, 6.0, 6.0];
    let mut lhs = 0.0;
    for (k, w) in weights.iter().enumerate() {
        for a2 in 0..=k {
            let sq = if k < 3 {
                w * w * PI * shell(a, b)
            } else {
                let re = [1.0, 0.0, -1.0, 0.0][a2 % 4] * w;
                re * re * 2.0 * PI * shell(a, b)
            };
            lhs += sq.sqrt();
        }
    }
    lhs / (PI * shell(c, d)).sqrt()
}

#[test]
fn cubic_caccioppoli_matches_closed_form() {
    let grid = Grid2D::centered(1.0, 513).unwrap();
    let u = AnalyticFn::harmonic(3, Part::Real).sample(grid).unwrap();
    let w = ScalarField::zeros(grid);
    let radii = ShellRadii::new(0.2, 0.4, 0.6, 0.8).unwrap();
    let rep = check_caccioppoli_interior(&u, &w, Point::ORIGIN, 1.0, &radii).unwrap();
    let oracle = cubic_caccioppoli_oracle(0.4, 0.6, 0.2, 0.8);
    assert!((rep.fitted_c / oracle - 1.0).abs() < 0.02, "grid {} vs {oracle}", rep.fitted_c);
}

#[test]
fn linear_half_ball_caccioppoli_converges_to_closed_form() {
    let oracle = caccioppoli_linear_oracle();
    let err = |res: usize| {
        let u = half_ball_field(2.5, res, false).unwrap();
        let rep = check_caccioppoli_boundary(&u, &ScalarField::zeros(*u.grid())).unwrap();
        (rep.fitted_c / oracle - 1.0).abs()
    };
    let (coarse, fine) = (err(257), err(513));
    assert!(coarse < 0.02 && fine < coarse, "{coarse} then {fine}");
}

#[test]
fn propagation_exponents_reproduce_reference() {
    let e = propagation_exponents(&WeightPsi::new(5.0, 0.1).unwrap()).unwrap();
    assert!((e.p0 - 0.003314).abs() <= 1e-6, "p0 {}", e.p0);
    assert!((e.p1 - 0.995913).abs() <= 1e-6, "p1 {}", e.p1);
    assert!((e.kappa - e.p1 / (e.p1 + e.p0)).abs() < 1e-15);
}

proptest! {
    #[test]
    fn quantization_gap_flags(k in 1u32..20, frac in 0.0f64..1.0) {
        let tau = k as f64 + frac;
        let flags = tau_admissible(tau, 0.0, TauLemma::Laplace, 0.0).unwrap();
        let dist = frac.min(1.0 - frac);
        prop_assert_eq!(flags.quantized, dist >= 1.0 / 3.0 - 1e-12);
    }

    #[test]
    fn phi_weight_decreases_near_the_pole(eps in 0.05f64..0.5, a in 0.01f64..0.5, b in 0.01f64..0.5) {
        let w = WeightPhi::new(eps, 1.0).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(hi - lo > 1e-6 && hi < w.monotone_radius());
        prop_assert!(w.phi(lo).unwrap() > w.phi(hi).unwrap());
    }

    #[test]
    fn laplace_estimate_is_dilation_invariant(lambda in 0.5f64..1.0) {
        let profile = BumpProfile::annular(Point::ORIGIN, (0.2, 0.3), 0.08).unwrap();
        let f = make_bump(&profile, &Grid2D::centered(0.6, 257).unwrap()).unwrap();
        let g = f.dilated(Point::ORIGIN, lambda).unwrap();
        let a = check_carleman_laplace(&f, 3.5, Point::ORIGIN, Measure::ScaleInvariant).unwrap();
        let b = check_carleman_laplace(&g, 3.5, Point::ORIGIN, Measure::ScaleInvariant).unwrap();
        prop_assert!((a.fitted_c / b.fitted_c - 1.0).abs() < 1e-9, "{} vs {}", a.fitted_c, b.fitted_c);
    }
}
