use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unmating::curve::{covering_residual, lift_iterate, winding_number, CurveSpec, JordanCurve, LiftOptions};
use unmating::equator::{classify_curve, Outcome};
use unmating::families::{lookup_curve, lookup_map, paper_curves};
use unmating::isotopy::{build_chart, classify_in_chart, curve_word, IsotopyClass};
use unmating::map::{compose, postcritical_set, RationalMap};
use unmating::numeric::{MoebiusTransform, Polynomial, SpherePoint, ToleranceConfig, C64};

const RESOLUTION: usize = 512;

fn figure(id: &str) -> (RationalMap, JordanCurve) {
    let tol = ToleranceConfig::default();
    let c = lookup_curve(id).unwrap();
    (lookup_map(&c.map_id, &tol).unwrap().map, c.sample(RESOLUTION).unwrap())
}

#[test]
fn lifts_cover_the_source_curve() {
    let tol = ToleranceConfig::default();
    for id in ["fig4", "fig5", "fig9", "fig13", "fig15", "fig17", "fig19"] {
        let (r, curve) = figure(id);
        let levels = lift_iterate(&r, 3, &curve, &tol, &LiftOptions::default()).unwrap();
        let mut previous = vec![curve.clone()];
        for (n, level) in levels.iter().enumerate() {
            let total: usize = level.covering_degrees.iter().sum();
            assert_eq!(total, r.degree().pow(n as u32 + 1), "{id} level {}", n + 1);
            for lifted in &level.curves.components {
                // Each component covers one curve of the previous level.
                let best = previous.iter().map(|src| covering_residual(&r, src, lifted).unwrap()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-8, "{id} level {}: residual {best:.2e}", n + 1);
            }
            previous = level.curves.components.clone();
        }
    }
}

#[test]
fn lifting_is_deterministic() {
    let tol = ToleranceConfig::default();
    let (r, curve) = figure("fig16");
    let a = lift_iterate(&r, 2, &curve, &tol, &LiftOptions::default()).unwrap();
    let b = lift_iterate(&r, 2, &curve, &tol, &LiftOptions::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

/// Crossing a component of `R^{-1}(γ)` flips the side of `R(x)` relative to `γ`, and nothing else does.
#[test]
fn preimage_sides_follow_component_parity() {
    let tol = ToleranceConfig::default();
    let id = MoebiusTransform::identity();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for fig in ["fig9", "fig10", "fig16", "fig17"] {
        let (r, curve) = figure(fig);
        let lifted = lift_iterate(&r, 1, &curve, &tol, &LiftOptions::default()).unwrap().pop().unwrap();
        let comps = &lifted.curves.components;
        let parity = |x: &SpherePoint| -> Option<(i32, i32)> {
            let mut total = 0;
            for c in comps {
                if c.distance_to(x) < 1e-3 {
                    return None;
                }
                total += winding_number(c, x, &id).ok()?;
            }
            if curve.distance_to(&r.evaluate(x).ok()?) < 1e-3 {
                return None;
            }
            let side = winding_number(&curve, &r.evaluate(x).ok()?, &id).ok()?;
            Some((total.rem_euclid(2), side.rem_euclid(2)))
        };
        let mut reference = None;
        let mut checked = 0;
        while checked < 200 {
            let x = SpherePoint::from_re_im(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
            let Some((p, s)) = parity(&x) else { continue };
            checked += 1;
            let rel = p ^ s;
            match reference {
                None => reference = Some(rel),
                Some(r0) => assert_eq!(rel, r0, "{fig}: parity mismatch at {:?}", x.affine()),
            }
        }
    }
}

fn postcritical_points(r: &RationalMap) -> Vec<SpherePoint> {
    postcritical_set(r, &ToleranceConfig::default()).unwrap().0.points
}

#[test]
fn reversed_curves_read_inverse_words() {
    for c in paper_curves() {
        let tol = ToleranceConfig::default();
        let r = lookup_map(&c.map_id, &tol).unwrap().map;
        let curve = c.sample(RESOLUTION).unwrap();
        let chart = build_chart(&postcritical_points(&r), &[curve.clone()]).unwrap();
        let w = curve_word(&chart, &curve).unwrap();
        let back = curve_word(&chart, &curve.reversed()).unwrap();
        assert_eq!(back.canonical(), w.inverse().canonical(), "{}", c.id);
    }
}

#[test]
fn perturbed_copies_are_isotopic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c in paper_curves() {
        let CurveSpec::Circle { center, radius } = c.spec else { continue };
        let tol = ToleranceConfig::default();
        let r = lookup_map(&c.map_id, &tol).unwrap().map;
        let curve = c.sample(RESOLUTION).unwrap();
        let shift = C64::new(rng.gen_range(-0.03..0.03), rng.gen_range(-0.03..0.03));
        let center = C64::new(center[0], center[1]);
        let moved = CurveSpec::circle(center + shift, radius * rng.gen_range(0.97..1.03)).sample(RESOLUTION).unwrap();
        let chart = build_chart(&postcritical_points(&r), &[curve.clone(), moved.clone()]).unwrap();
        let (class, _, _) = classify_in_chart(&chart, &curve, &moved).unwrap();
        assert_eq!(class, IsotopyClass::OrientationPreserving, "{}", c.id);
        let (class, _, _) = classify_in_chart(&chart, &curve, &moved.reversed()).unwrap();
        assert_eq!(class, IsotopyClass::OrientationReversing, "{}", c.id);
    }
}

fn as_map(m: [C64; 4]) -> RationalMap {
    RationalMap::new(Polynomial::new(vec![m[1], m[0]]), Polynomial::new(vec![m[3], m[2]])).unwrap()
}

/// Verdicts do not depend on the coordinate chart: conjugating by a sphere rotation changes nothing.
#[test]
fn verdicts_survive_sphere_rotations() {
    let tol = ToleranceConfig::default();
    for (fig, theta, phi) in [("fig9", 0.3f64, 0.2), ("fig13", -0.25, 1.0), ("fig17", 0.2, -0.7), ("fig4", 0.15, 2.0)] {
        let (r, curve) = figure(fig);
        // Unitary matrix [[a, -conj c], [c, conj a]].
        let a = C64::new(theta.cos(), 0.0);
        let c = C64::from_polar(theta.sin(), phi);
        let m = [a, -c.conj(), c, a.conj()];
        let m_inv = [a.conj(), c.conj(), -c, a];
        let conjugated = compose(&as_map(m), &compose(&r, &as_map(m_inv)).unwrap()).unwrap();
        let rot = MoebiusTransform::new(m[0], m[1], m[2], m[3]).unwrap();
        let moved = JordanCurve::from_points(curve.samples().iter().map(|p| rot.apply(p)).collect()).unwrap();
        for n in 1..=2 {
            let before = classify_curve(&r, n, &curve, &tol).unwrap().outcome;
            let after = classify_curve(&conjugated, n, &moved, &tol).unwrap().outcome;
            assert_eq!(before, after, "{fig} level {n}");
            assert_ne!(before, Outcome::Inessential);
        }
    }
}
