use nodal_lab::doubling::ProbePlan;
use nodal_lab::field::{Cube, Grid2D, Point, ScalarField};
use nodal_lab::lab::runs::cubic_nodal_length;
use nodal_lab::nodal::{
    assemble_global_bound, bad_cube_count, extract_nodal_set, growth_exponent, hyperplane_lemma_check,
    nodal_bound_recursion, partition, random_simplex, simplex_covering_check, simplex_metrics,
};
use nodal_lab::solution::{AnalyticFn, Part};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_square() -> Cube {
    Cube::centered(Point::ORIGIN, 2.0).unwrap()
}

fn sampled(res: usize, f: impl Fn(Point) -> f64) -> ScalarField {
    ScalarField::from_fn(Grid2D::centered(1.0, res).unwrap(), f).unwrap()
}

#[test]
fn cubic_length_converges_to_closed_form() {
    let mut prev = f64::INFINITY;
    for res in [129, 257, 513] {
        let u = AnalyticFn::harmonic(3, Part::Real).sample(Grid2D::centered(1.0, res).unwrap()).unwrap();
        let err = (extract_nodal_set(&u, &unit_square()).unwrap().total_length - cubic_nodal_length()).abs();
        assert!(err < prev, "res {res}: {err}");
        prev = err;
    }
    assert!(prev < 0.05);
}

#[test]
fn boundary_zero_lines_do_not_count() {
    // x₁² − 1 vanishes only on ∂Q.
    let u = sampled(65, |p| p.x * p.x - 1.0);
    assert_eq!(extract_nodal_set(&u, &unit_square()).unwrap().total_length, 0.0);
}

#[test]
fn harmonic_partitions_satisfy_both_counts() {
    let u = AnalyticFn::harmonic(5, Part::Real).sample(Grid2D::centered(1.0, 257).unwrap()).unwrap();
    let q = Cube::centered(Point::ORIGIN, 1.0).unwrap();
    let plan = ProbePlan::new(5, 4);
    for a in [8, 12] {
        let h = hyperplane_lemma_check(&u, &q, a, None, 3.0, &plan).unwrap();
        assert!(h.applicable && h.holds, "A = {a}: {} vs {}", h.extreme, h.threshold);
        let b = bad_cube_count(&u, &q, a, 3.0, 0.05, &plan).unwrap();
        assert!(b.holds && b.count_above * 2 <= a, "A = {a}: {}", b.count_above);
    }
}

#[test]
fn equilateral_simplex_is_covered_and_recursion_example() {
    let h = 3f64.sqrt() / 2.0;
    let s = simplex_metrics([Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, h)]);
    assert!((s.relative_width - h).abs() < 1e-12);
    assert!(simplex_covering_check(&s, 4.0, 0.05, 20_000).unwrap().pass);
    let r = nodal_bound_recursion(1.1f64.powi(3), 1.0, 10.0, 0.1, 1.0).unwrap();
    assert_eq!(r.steps, 3);
    assert!((r.iterated - 8000.0).abs() < 1e-9 && (r.closed_form - 8000.0).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vertical_line_length_within_two_steps(c in -0.9f64..0.9, res in prop_oneof![Just(65usize), Just(129), Just(257)]) {
        let u = sampled(res, |p| p.x - c);
        let h = 2.0 / (res - 1) as f64;
        let len = extract_nodal_set(&u, &unit_square()).unwrap().total_length;
        prop_assert!((len - 2.0).abs() <= 2.0 * h + 1e-12, "length {}", len);
    }

    #[test]
    fn length_is_sign_amplitude_and_transpose_invariant(lambda in prop_oneof![-4.0f64..-0.25, 0.25f64..4.0], a in 1.0f64..8.0, b in 1.0f64..8.0) {
        let u = sampled(129, |p| (a * p.x + 0.3).sin() * (b * p.y - 0.2).cos() + 0.1);
        let ut = sampled(129, |p| (a * p.y + 0.3).sin() * (b * p.x - 0.2).cos() + 0.1);
        let q = unit_square();
        let base = extract_nodal_set(&u, &q).unwrap().total_length;
        let scaled = extract_nodal_set(&u.scaled(lambda).unwrap(), &q).unwrap().total_length;
        let transposed = extract_nodal_set(&ut, &q).unwrap().total_length;
        prop_assert!((base - scaled).abs() <= 1e-9 * base.max(1.0));
        prop_assert!((base - transposed).abs() <= 1e-9 * base.max(1.0));
    }

    #[test]
    fn segments_stay_inside_the_cube(k in 2u32..7, side in 0.5f64..1.8) {
        let u = AnalyticFn::harmonic(k, Part::Imaginary).sample(Grid2D::centered(1.0, 129).unwrap()).unwrap();
        let q = Cube::centered(Point::new(0.05, -0.03), side).unwrap();
        let set = extract_nodal_set(&u, &q).unwrap();
        let hi = q.max();
        for s in &set.segments {
            for p in [s.a, s.b] {
                prop_assert!(p.x > q.min.x && p.x < hi.x && p.y > q.min.y && p.y < hi.y);
            }
        }
    }

    #[test]
    fn partition_tiles_the_cube(per_axis in 2usize..20, side in 0.1f64..4.0) {
        let q = Cube::centered(Point::new(0.3, -0.7), side).unwrap();
        let cubes = partition(&q, per_axis).unwrap();
        prop_assert_eq!(cubes.len(), per_axis * per_axis);
        let area: f64 = cubes.iter().map(Cube::area).sum();
        prop_assert!((area / q.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vertex_balls_nest_in_barycenter_balls(seed in any::<u64>(), k in 1.0f64..8.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_simplex(&mut rng, 0.3);
        let rep = simplex_covering_check(&s, k, 0.05, 64).unwrap();
        prop_assert!(rep.nesting_margin >= 0.0, "margin {}", rep.nesting_margin);
    }

    #[test]
    fn recursion_agrees_with_closed_form(n in 0.5f64..1e3, n0 in 0.5f64..10.0, a in 2.0f64..20.0, c in 0.05f64..1.0) {
        let r = nodal_bound_recursion(n, n0, a, c, 1.0).unwrap();
        prop_assert!(r.agrees(), "{:?}", r);
    }

    #[test]
    fn beta_exceeds_a_quarter(a in 2.0f64..50.0, c in 0.01f64..2.0, m in 1.0f64..1e6) {
        let l = assemble_global_bound(m, a, c, 1.0).unwrap();
        prop_assert!(l.beta > 0.25);
        prop_assert!((l.beta - (growth_exponent(a, c) / 3.0 + 0.25)).abs() < 1e-12 * l.beta);
    }
}
