//! Property tests for the kernel: metric axioms, group-action laws, model
//! round-trips and canonical-form behavior over random inputs.

use geocover::fuchsian::{FuchsianGroup, Membership, BOUNDARY_TOL};
use geocover::hyp::{Isometry, UhpPoint};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = UhpPoint> {
    ((-20.0..20.0f64), (1e-3..1e3f64)).prop_map(|(x, y)| UhpPoint::new(x, y).expect("y > 0"))
}

fn isometry() -> impl Strategy<Value = Isometry> {
    (point(), (0.0..std::f64::consts::TAU)).prop_map(|(p, theta)| {
        Isometry::from_base_point(&p).compose(&Isometry::rotation_about_base(theta))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_a_metric(p in point(), q in point(), r in point()) {
        prop_assert_eq!(p.distance(&q), q.distance(&p));
        prop_assert!(p.distance(&q) >= 0.0);
        prop_assert!(p.distance(&p) == 0.0);
        prop_assert!(p.distance(&r) <= p.distance(&q) + q.distance(&r) + 1e-12);
    }

    #[test]
    fn action_is_isometric_and_compositional(g in isometry(), h in isometry(), p in point(), q in point()) {
        let d_before = p.distance(&q);
        let d_after = g.apply(&p).distance(&g.apply(&q));
        prop_assert!((d_before - d_after).abs() <= 1e-9 * (1.0 + d_before));
        let via_product = g.compose(&h).apply(&p);
        let via_stages = g.apply(&h.apply(&p));
        prop_assert!(via_product.distance(&via_stages) <= 1e-9);
    }

    #[test]
    fn inverse_cancels(g in isometry(), p in point()) {
        let back = g.inverse().apply(&g.apply(&p));
        prop_assert!(back.distance(&p) <= 1e-9);
        prop_assert!(g.compose(&g.inverse()).is_identity(1e-9));
    }

    #[test]
    fn canonical_form_quotients_sign(g in isometry()) {
        // -g and g are the same element and normalize identically
        let (a, b, c, d) = g.entries();
        let neg = Isometry::new(-a, -b, -c, -d).unwrap();
        prop_assert!(neg.approx_eq(&g, 0.0));
        // norm identity against the base-point displacement
        let disp = g.apply(&UhpPoint::base()).distance(&UhpPoint::base());
        prop_assert!((2.0 * disp.cosh() - g.norm_sq()).abs() <= 1e-9 * g.norm_sq());
    }

    #[test]
    fn disk_round_trip(p in point()) {
        let rt = p.to_disk().to_uhp();
        prop_assert!(rt.distance(&p) <= 1e-9);
    }

    #[test]
    fn modular_reduction_lands_inside(p in point()) {
        let grp = FuchsianGroup::modular();
        let (z, gamma) = grp.reduce(&p).unwrap();
        prop_assert!(gamma.apply(&p).distance(&z) <= 1e-9);
        prop_assert!(grp.membership(&z, BOUNDARY_TOL) != Membership::Outside);
        // reducing the representative is a no-op up to boundary ties
        let (z2, _) = grp.reduce(&z).unwrap();
        prop_assert!(z2.distance(&z) <= 1e-9);
    }

    #[test]
    fn segment_transport_is_exact(p in point(), q in point(), mover in isometry()) {
        prop_assume!(p.distance(&q) > 1e-6);
        let c = mover.apply(&p);
        let d = mover.apply(&q);
        let m = Isometry::mapping_segment(&p, &q, &c, &d).unwrap();
        prop_assert!(m.apply(&p).distance(&c) <= 1e-8);
        prop_assert!(m.apply(&q).distance(&d) <= 1e-8);
    }
}
