use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unmating::families::full_catalog;
use unmating::map::{compose, critical_points, critical_values, postcritical_set, Dynamics, IterateSpec, RationalMap};
use unmating::numeric::{chordal_distance, Polynomial, SpherePoint, ToleranceConfig, C64};

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    SpherePoint::from_re_im(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

#[test]
fn critical_points_count_2d_minus_2_over_catalog() {
    let tol = ToleranceConfig::default();
    for e in full_catalog(&tol).unwrap() {
        let total: usize = critical_points(&e.map, &tol).unwrap().iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 2 * e.map.degree() - 2, "{}", e.name);
    }
}

#[test]
fn stored_orbit_graph_matches_evaluation() {
    let tol = ToleranceConfig::default();
    for e in full_catalog(&tol).unwrap() {
        let (set, graph) = postcritical_set(&e.map, &tol).unwrap();
        for (i, p) in set.points.iter().enumerate() {
            let image = e.map.evaluate(p).unwrap();
            let d = chordal_distance(&image, &set.points[graph.successor[i]]);
            assert!(d <= tol.eps_orbit, "{}: point {i} lands {d:.2e} from its successor", e.name);
        }
        for (i, p) in set.points.iter().enumerate() {
            for q in &set.points[..i] {
                assert!(chordal_distance(p, q) > tol.eps_orbit, "{}: duplicate points", e.name);
            }
        }
    }
}

#[test]
fn fibers_have_full_cardinality_and_small_residual() {
    let tol = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for e in full_catalog(&tol).unwrap() {
        let cv = critical_values(&e.map, &tol).unwrap();
        let mut tested = 0;
        while tested < 10 {
            let q = random_point(&mut rng);
            if cv.iter().any(|v| chordal_distance(v, &q) <= 1e-6) {
                continue;
            }
            tested += 1;
            let fiber = e.map.fiber(&q, &tol).unwrap();
            assert_eq!(fiber.len(), e.map.degree(), "{}", e.name);
            for (i, x) in fiber.iter().enumerate() {
                let r = chordal_distance(&e.map.evaluate(x).unwrap(), &q);
                assert!(r < 1e-9, "{}: residual {r:.2e}", e.name);
                for y in &fiber[..i] {
                    assert!(chordal_distance(x, y) > 1e-8, "{}: repeated fiber point", e.name);
                }
            }
        }
    }
}

#[test]
fn lazy_iterate_matches_repeated_evaluation() {
    let tol = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for e in full_catalog(&tol).unwrap().iter().take(12) {
        let it = IterateSpec::new(e.map.clone(), 2).unwrap();
        assert_eq!(Dynamics::degree(&it), e.map.degree().pow(2));
        for _ in 0..100 {
            let p = random_point(&mut rng);
            let twice = e.map.evaluate(&e.map.evaluate(&p).unwrap()).unwrap();
            let d = chordal_distance(&Dynamics::evaluate(&it, &p).unwrap(), &twice);
            assert!(d < 1e-10, "{}: {d:.2e}", e.name);
        }
    }
}

fn small_map() -> impl Strategy<Value = RationalMap> {
    let c = || (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| C64::new(a, b));
    (prop::collection::vec(c(), 1..4), prop::collection::vec(c(), 1..4)).prop_filter_map("degenerate", |(n, d)| {
        let m = RationalMap::new(Polynomial::new(n), Polynomial::new(d)).ok()?;
        (m.degree() >= 1).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_agrees_with_evaluation(r1 in small_map(), r2 in small_map(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let c = compose(&r1, &r2).unwrap();
        prop_assert_eq!(c.degree(), r1.degree() * r2.degree());
        let p = SpherePoint::from_re_im(re, im);
        let direct = r1.evaluate(&r2.evaluate(&p).unwrap()).unwrap();
        let d = chordal_distance(&c.evaluate(&p).unwrap(), &direct);
        prop_assert!(d < 1e-7, "{}", d);
    }
}
