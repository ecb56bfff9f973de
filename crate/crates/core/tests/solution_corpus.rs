use std::f64::consts::PI;

use nodal_lab::field::{Cube, Grid2D, Point, Region, ScalarField};
use nodal_lab::solution::{
    generate_analytic, rescale_point, rescale_to_unit_potential, residual, solve_bilaplace_bvp,
    solve_spec, AnalyticFn, BoundaryTerm, BvpParams, Family, Part, Potential, SolutionSpec,
    SolveOptions,
};

fn sine_error(res: usize) -> f64 {
    let f = AnalyticFn::SineProduct { a: PI, b: PI };
    let spec = SolutionSpec::new(
        Family::Bvp(BvpParams::manufactured(f)),
        [0.1, 0.1, 0.9, 0.9],
        res,
    );
    let sol = solve_spec(&spec, &SolveOptions::default()).unwrap();
    let exact = f.sample(*sol.u.grid()).unwrap();
    sol.u.sub(&exact).unwrap().max_abs()
}

#[test]
fn manufactured_sine_is_second_order() {
    let e1 = sine_error(129);
    let e2 = sine_error(257);
    let ratio = e1 / e2;
    assert!((3.6..=4.4).contains(&ratio), "ratio {ratio} ({e1}, {e2})");
}

#[test]
fn sine_potential_flags_contraction_but_converges() {
    let f = AnalyticFn::SineProduct { a: PI, b: PI };
    let spec = SolutionSpec::new(
        Family::Bvp(BvpParams::manufactured(f)),
        [0.1, 0.1, 0.9, 0.9],
        65,
    );
    let rep = solve_spec(&spec, &SolveOptions::default()).unwrap().report.unwrap();
    assert!(rep.ill_posed_regime);
    assert!(rep.linear_residual <= 1e-10);
    assert!(rep.iterations > 0);
}

#[test]
fn solver_is_linear_in_data() {
    let g = Grid2D::centered(0.25, 65).unwrap();
    let w = ScalarField::from_fn(g, |p| 0.5 + 0.3 * (3.0 * p.x - p.y).cos()).unwrap();
    let a0 = ScalarField::from_fn(g, |p| (p.x + 2.0 * p.y).exp()).unwrap();
    let a1 = ScalarField::from_fn(g, |p| p.x * p.y).unwrap();
    let b0 = ScalarField::from_fn(g, |p| (5.0 * p.x).sin()).unwrap();
    let b1 = ScalarField::from_fn(g, |p| 1.0 - p.y * p.y).unwrap();
    let o = SolveOptions::default();
    let (ua, _) = solve_bilaplace_bvp(&w, &a0, &a1, &o).unwrap();
    let (ub, _) = solve_bilaplace_bvp(&w, &b0, &b1, &o).unwrap();
    let (us, _) =
        solve_bilaplace_bvp(&w, &a0.add(&b0).unwrap(), &a1.add(&b1).unwrap(), &o).unwrap();
    let diff = us.sub(&ua.add(&ub).unwrap()).unwrap().max_abs();
    assert!(diff < 1e-9, "superposition defect {diff}");
}

#[test]
fn bvp_solution_satisfies_discrete_equation() {
    let spec = SolutionSpec::new(
        Family::Bvp(BvpParams {
            potential: Potential::Cosine {
                mean: 0.004,
                amplitude: 0.003,
                wave: [2.0, 1.0],
                phase: 0.3,
            },
            g0: vec![BoundaryTerm {
                coef: 1.0,
                func: AnalyticFn::Exponential { mu: [0.7, -0.4] },
                laplacian: false,
            }],
            g1: vec![BoundaryTerm {
                coef: 0.5,
                func: AnalyticFn::harmonic(2, Part::Imaginary),
                laplacian: false,
            }],
        }),
        [-1.0, -1.0, 1.0, 1.0],
        129,
    );
    let sol = solve_spec(&spec, &SolveOptions::default()).unwrap();
    let rep = sol.report.unwrap();
    assert!(!rep.ill_posed_regime);
    assert!(rep.linear_residual <= 1e-10);
    // Δ_h² amplifies rounding by about 16 h⁻⁴ ε.
    assert!(rep.pde_residual < 1e-6, "pde residual {}", rep.pde_residual);
}

#[test]
fn analytic_residuals() {
    let interior = Region::cube(Cube::new(Point::new(0.05, 0.05), 0.9).unwrap());
    for k in 1..=3 {
        let spec = SolutionSpec::new(
            Family::HarmonicPolynomial { k, part: Part::Real },
            [0.0, 0.0, 1.0, 1.0],
            129,
        );
        let s = generate_analytic(&spec).unwrap();
        assert!(residual(&s.u, &s.w, &interior).unwrap() <= 1e-8);
    }
    let mut prev = None;
    for res in [129, 257] {
        let spec = SolutionSpec::new(
            Family::SineProduct { a: PI, b: PI },
            [0.0, 0.0, 1.0, 1.0],
            res,
        );
        let s = generate_analytic(&spec).unwrap();
        assert!((s.m - 4.0 * PI.powi(4)).abs() < 1e-9);
        let r = residual(&s.u, &s.w, &interior).unwrap();
        assert!(r <= 0.05);
        if let Some(p) = prev {
            let ratio: f64 = p / r;
            assert!((ratio - 4.0).abs() < 0.3, "halving ratio {ratio}");
        }
        prev = Some(r);
    }
    let z = ScalarField::zeros(Grid2D::square(0.0, 0.0, 1.0, 65).unwrap());
    assert_eq!(residual(&z, &z, &interior).unwrap(), 0.0);
}

#[test]
fn exponential_potential() {
    let spec = SolutionSpec::new(Family::Exponential { mu: [1.0, 0.0] }, [0.0, 0.0, 1.0, 1.0], 33);
    let s = generate_analytic(&spec).unwrap();
    assert_eq!(s.m, 1.0);
    assert!(s.w.values().iter().all(|&v| v == 1.0));
}

#[test]
fn rescaling_examples() {
    let g = Grid2D::centered(1.0, 65).unwrap();
    let f = AnalyticFn::Exponential { mu: [0.3, 1.1] };
    let u = f.sample(g).unwrap();
    let same = rescale_to_unit_potential(&u, 1.0, Some(&g)).unwrap();
    assert_eq!(same.field, u);
    assert_eq!(
        rescale_point(&u, 16.0, Point::new(2.0, 0.0)).unwrap(),
        u.at(64, 32)
    );

    let src = Grid2D::square(0.0, 0.0, 1.0, 257).unwrap();
    let sine = AnalyticFn::SineProduct { a: PI, b: PI };
    let m = 4.0 * PI.powi(4);
    let us = sine.sample(src).unwrap();
    let out = rescale_to_unit_potential(&us, m, Some(&src)).unwrap();
    let freq = PI / m.powf(0.25);
    let oracle = AnalyticFn::SineProduct { a: freq, b: freq }.sample(src).unwrap();
    let err = out.field.sub(&oracle).unwrap().max_abs();
    assert!(err < 1e-6, "rescaled sine error {err}");
}
