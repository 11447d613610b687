use proptest::prelude::*;
use unmating::numeric::{chordal_distance, poly_roots, MoebiusTransform, Polynomial, SpherePoint, ToleranceConfig, C64};

fn complex(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(a, b)| C64::new(a, b))
}

fn sphere_point() -> impl Strategy<Value = SpherePoint> {
    prop_oneof![
        9 => complex(50.0).prop_map(SpherePoint::finite),
        1 => Just(SpherePoint::INFINITY),
    ]
}

fn residual_ok(p: &Polynomial, r: C64, eps: f64) -> bool {
    let scale: f64 = p.coeffs().iter().enumerate().map(|(i, c)| c.norm() * r.norm().max(1.0).powi(i as i32)).sum();
    p.eval(r).norm() <= eps * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_count_and_residual(coeffs in prop::collection::vec(complex(4.0), 2..14)) {
        let p = Polynomial::new(coeffs);
        prop_assume!(p.leading().norm() > 1e-3);
        let tol = ToleranceConfig::default();
        let roots = poly_roots(&p, &tol).unwrap();
        prop_assert_eq!(roots.len(), p.degree());
        for r in roots {
            prop_assert!(residual_ok(&p, r, tol.eps_root), "residual at {}", r);
        }
    }

    #[test]
    fn roots_of_real_polynomials_come_in_conjugate_pairs(coeffs in prop::collection::vec(-3.0f64..3.0, 2..10)) {
        let p = Polynomial::from_real(&coeffs);
        prop_assume!(p.leading().norm() > 1e-2 && p.degree() >= 1);
        let tol = ToleranceConfig::default();
        let roots = poly_roots(&p, &tol).unwrap();
        let conj = poly_roots(&p.conj(), &tol).unwrap();
        // Roots of the conjugate polynomial are the conjugate roots.
        for r in &roots {
            let best = conj.iter().map(|s| (s - r.conj()).norm()).fold(f64::INFINITY, f64::min);
            let multiple = roots.iter().filter(|s| (*s - r).norm() < 1e-4).count() > 1;
            prop_assert!(best < 1e-10 * (1.0 + r.norm()) || multiple, "unmatched root {}", r);
        }
    }

    #[test]
    fn roots_recovered_from_products(rs in prop::collection::vec(complex(3.0), 1..9)) {
        // Keep the roots apart so each is well conditioned.
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[..i] {
                prop_assume!((a - b).norm() > 0.2);
            }
        }
        let p = Polynomial::from_roots(&rs);
        let found = poly_roots(&p, &ToleranceConfig::default()).unwrap();
        for r in &rs {
            let best = found.iter().map(|s| (s - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-8, "root {} missed by {}", r, best);
        }
    }

    #[test]
    fn moebius_round_trip(a in complex(3.0), b in complex(3.0), c in complex(3.0), d in complex(3.0), p in sphere_point()) {
        prop_assume!((a * d - b * c).norm() > 0.1);
        let m = MoebiusTransform::new(a, b, c, d).unwrap();
        let back = m.apply(&m.inverse().apply(&p));
        prop_assert!(chordal_distance(&back, &p) < 1e-12, "moved by {}", chordal_distance(&back, &p));
    }

    #[test]
    fn normalization(z in complex(1e6), w in complex(1e6)) {
        prop_assume!(z.norm() + w.norm() > 0.0);
        let p = SpherePoint::from_homogeneous(z, w).unwrap();
        let m = p.num().norm().max(p.den().norm());
        prop_assert!((m - 1.0).abs() < 1e-14);
        if w.norm() > 0.0 {
            let a = p.affine().unwrap();
            prop_assert!((a - z / w).norm() <= 1e-12 * (z / w).norm().max(1.0));
        }
    }

    #[test]
    fn chordal_metric_axioms(p in sphere_point(), q in sphere_point(), r in sphere_point()) {
        let pq = chordal_distance(&p, &q);
        prop_assert!((0.0..=2.0 + 1e-15).contains(&pq));
        prop_assert!((pq - chordal_distance(&q, &p)).abs() < 1e-15);
        prop_assert!(pq <= chordal_distance(&p, &r) + chordal_distance(&r, &q) + 1e-12);
        prop_assert!(chordal_distance(&p, &p) < 1e-15);
    }
}

#[test]
fn invalid_tolerances_rejected() {
    let t = ToleranceConfig { eps_orbit: 0.0, ..ToleranceConfig::default() };
    assert!(t.validate().is_err());
    let t = ToleranceConfig { max_refine_depth: 0, ..ToleranceConfig::default() };
    assert!(t.validate().is_err());
}
