//! Property tests for the metric backbone: Lipschitz bounds, hull
//! idempotence, certificate monotonicity, and Hausdorff axioms. These are the
//! facts every later stage (pruning, rooting, certification) leans on.

use midset::analysis::hausdorff_distance;
use midset::certification::shadowing_radius;
use midset::extraction::prune_threshold;
use midset::geometry::{convex_hull, gap, FocalSet, Point2, Primitive};
use proptest::prelude::*;

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn coord() -> impl Strategy<Value = f64> {
    -8.0..8.0f64
}

fn arb_primitive() -> impl Strategy<Value = Primitive> {
    prop_oneof![
        (coord(), coord()).prop_map(|(x, y)| Primitive::dot(pt(x, y)).unwrap()),
        (coord(), coord(), 0.1..3.0f64, 0.1..3.0f64)
            .prop_map(|(x, y, dx, dy)| Primitive::segment(pt(x, y), pt(x + dx, y - dy)).unwrap()),
        (coord(), coord(), 0.05..2.5f64)
            .prop_map(|(x, y, r)| Primitive::circle(pt(x, y), r).unwrap()),
        (coord(), coord(), 0.05..2.5f64)
            .prop_map(|(x, y, r)| Primitive::disk(pt(x, y), r).unwrap()),
        (coord(), coord(), 0.1..2.0f64, 0.1..2.0f64, proptest::bool::ANY).prop_map(
            |(x, y, dx, dy, closed)| Primitive::polyline(
                vec![pt(x, y), pt(x + dx, y), pt(x + dx, y + dy)],
                closed
            )
            .unwrap()
        ),
    ]
}

fn arb_points(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((coord(), coord()).prop_map(|(x, y)| pt(x, y)), 1..max)
}

proptest! {
    /// Point-to-set distance moves at most as fast as the point.
    #[test]
    fn primitive_distance_is_1_lipschitz(
        p in arb_primitive(),
        (x1, y1) in (coord(), coord()),
        (x2, y2) in (coord(), coord()),
    ) {
        let a = pt(x1, y1);
        let b = pt(x2, y2);
        let lhs = (p.distance(a) - p.distance(b)).abs();
        prop_assert!(lhs <= a.dist(b) + 1e-12);
    }

    /// The gap of a pair of focal sets moves at most twice as fast.
    #[test]
    fn gap_is_2_lipschitz(
        pa in arb_primitive(),
        pb in arb_primitive(),
        (x1, y1) in (coord(), coord()),
        (x2, y2) in (coord(), coord()),
    ) {
        let a = FocalSet::new("A", vec![pa]).unwrap();
        let b = FocalSet::new("B", vec![pb]).unwrap();
        let u = pt(x1, y1);
        let v = pt(x2, y2);
        prop_assert!((gap(u, &a, &b) - gap(v, &a, &b)).abs() <= 2.0 * u.dist(v) + 1e-12);
    }

    /// Swapping the focal sets flips the sign bit and nothing else.
    #[test]
    fn gap_is_antisymmetric(
        pa in arb_primitive(),
        pb in arb_primitive(),
        (x, y) in (coord(), coord()),
    ) {
        let a = FocalSet::new("A", vec![pa]).unwrap();
        let b = FocalSet::new("B", vec![pb]).unwrap();
        let q = pt(x, y);
        prop_assert_eq!(gap(q, &a, &b), -gap(q, &b, &a));
    }

    /// A cell whose center clears the prune threshold has one sign throughout.
    #[test]
    fn prune_threshold_is_sound(
        pa in arb_primitive(),
        pb in arb_primitive(),
        (cx, cy) in (coord(), coord()),
        hw in 0.01..0.75f64,
    ) {
        let a = FocalSet::new("A", vec![pa]).unwrap();
        let b = FocalSet::new("B", vec![pb]).unwrap();
        let c = pt(cx, cy);
        let g0 = gap(c, &a, &b);
        prop_assume!(g0.abs() > prune_threshold(hw) + 1e-9);
        for i in 0..5 {
            for j in 0..5 {
                let p = pt(
                    cx - hw + 2.0 * hw * i as f64 / 4.0,
                    cy - hw + 2.0 * hw * j as f64 / 4.0,
                );
                prop_assert!(gap(p, &a, &b) * g0 > 0.0, "sign change inside pruned cell");
            }
        }
    }

    /// Re-hulling the hull is the identity, and no input escapes it.
    #[test]
    fn hull_is_idempotent_and_contains_inputs(pts in arb_points(24)) {
        let h = convex_hull(&pts).unwrap();
        let h2 = convex_hull(&h.vertices).unwrap();
        prop_assert_eq!(&h2, &h);
        for &p in &pts {
            prop_assert!(h.contains(p, 1e-9));
        }
    }

    /// Certified radii never undercut eps/2 and respond monotonically to the
    /// hypotheses: more gap widens the bound, a wider separating angle
    /// sharpens it.
    #[test]
    fn shadowing_radius_bounds_and_monotonicity(
        eps in 0.0..2.0f64,
        d_eps in 0.0..1.5f64,
        d in 0.01..5.0f64,
        alpha in 0.001..std::f64::consts::PI,
        d_alpha in 0.0..1.0f64,
    ) {
        let r = shadowing_radius(eps, d, alpha).unwrap();
        prop_assert!(r >= eps / 2.0 - 1e-15);

        let r_more_gap = shadowing_radius(eps + d_eps, d, alpha).unwrap();
        prop_assert!(r_more_gap >= r - 1e-12 * (1.0 + r));

        let wider = (alpha + d_alpha).min(std::f64::consts::PI);
        let r_wider = shadowing_radius(eps, d, wider).unwrap();
        prop_assert!(r_wider <= r + 1e-12 * (1.0 + r));
    }

    /// Hausdorff distance is a metric on finite point sets.
    #[test]
    fn hausdorff_axioms(
        xs in arb_points(12),
        ys in arb_points(12),
        zs in arb_points(12),
    ) {
        let dxy = hausdorff_distance(&xs, &ys).unwrap();
        let dyx = hausdorff_distance(&ys, &xs).unwrap();
        prop_assert_eq!(dxy, dyx);
        prop_assert_eq!(hausdorff_distance(&xs, &xs).unwrap(), 0.0);
        let dxz = hausdorff_distance(&xs, &zs).unwrap();
        let dyz = hausdorff_distance(&ys, &zs).unwrap();
        prop_assert!(dxz <= dxy + dyz + 1e-12);
    }
}
