use nodal_lab::doubling::{
    ball_sup, check_monotonicity, doubling_index, fit_monotonicity, three_ball_exponents,
    unexplained_violations,
};
use nodal_lab::field::{sup_norm, Grid2D, Point, Region, ScalarField};
use nodal_lab::solution::{AnalyticFn, Part};
use proptest::prelude::*;

fn harmonic(k: u32, part: Part, res: usize) -> ScalarField {
    AnalyticFn::harmonic(k, part).sample(Grid2D::centered(1.0, res).unwrap()).unwrap()
}

#[test]
fn ball_sup_matches_homogeneous_maximum() {
    for k in 1..=6 {
        let u = harmonic(k, Part::Real, 513);
        for r in [0.05f64, 0.1, 0.2] {
            let s = ball_sup(&u, Point::ORIGIN, r).unwrap();
            let exact = r.powi(k as i32);
            let nodes = sup_norm(&u, &Region::ball(Point::ORIGIN, r).unwrap()).unwrap();
            assert!(s >= nodes);
            assert!((s / exact - 1.0).abs() < 1e-3, "k {k} r {r}: {s} vs {exact}");
        }
    }
}

#[test]
fn exponential_index_grows_with_radius() {
    let u = AnalyticFn::Exponential { mu: [2.0, 1.0] }.sample(Grid2D::centered(1.0, 257).unwrap()).unwrap();
    let n1 = doubling_index(&u, Point::ORIGIN, 0.1).unwrap().index;
    let n2 = doubling_index(&u, Point::ORIGIN, 0.2).unwrap().index;
    assert!(n1 > 0.0 && n2 > n1, "{n1} {n2}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogeneous_index_is_degree(k in 1u32..=4, r in 0.05f64..0.25, imaginary in any::<bool>()) {
        let part = if imaginary { Part::Imaginary } else { Part::Real };
        let u = harmonic(k, part, 257);
        let n = doubling_index(&u, Point::ORIGIN, r).unwrap().index;
        prop_assert!((n - k as f64).abs() < 0.01, "N = {}", n);
    }

    #[test]
    fn index_ignores_amplitude(lambda in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0], x in -0.4f64..0.4, y in -0.4f64..0.4) {
        let u = harmonic(3, Part::Real, 129);
        let x = Point::new(x, y);
        let a = doubling_index(&u, x, 0.1).unwrap().index;
        let b = doubling_index(&u.scaled(lambda).unwrap(), x, 0.1).unwrap().index;
        prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn fitted_constants_explain_their_own_records(
        centers in prop::collection::vec((-0.1f64..0.1, -0.1f64..0.1), 1..4),
        t in prop_oneof![Just(3.0), Just(4.0), Just(6.0), Just(8.0)],
    ) {
        let u = AnalyticFn::SineProduct { a: 3.0, b: 2.0 }.sample(Grid2D::centered(1.0, 129).unwrap()).unwrap();
        let recs: Vec<_> = centers
            .iter()
            .map(|&(x, y)| check_monotonicity(&u, Point::new(x, y), 0.02, t, 0.1).unwrap())
            .collect();
        let fit = fit_monotonicity(&recs);
        prop_assert!(unexplained_violations(&recs, &fit, 0.0).is_empty());
        for rec in &recs {
            prop_assert!(rec.holds_with(fit.c));
        }
    }

    #[test]
    fn theta_lies_in_unit_interval(r in 0.01f64..0.2, t in 3.0f64..8.0, delta in 0.01f64..0.2, eps in 0.05f64..0.5) {
        let e = three_ball_exponents(r, t, delta, eps).unwrap();
        prop_assert!(e.theta > 0.0 && e.theta < 1.0, "θ = {}", e.theta);
        prop_assert!(e.beta1 > 0.0 && e.beta2 > 0.0);
    }
}
