//! Property-based tests: overlap symmetries and bounds, transform round
//! trips, sampling membership, and cloud determinism.

mod common;

use probtest_support::*;
use proptest::prelude::*;

mod probtest_support {
    pub use probmatch::geometry::*;
    pub use probmatch::sampling::*;
    pub use probmatch::votes::*;

    pub fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y).unwrap()
    }
}

fn triangle_soup() -> impl Strategy<Value = TriangleSoup> {
    proptest::collection::vec(-3.0..3.0f64, 6).prop_filter_map("degenerate triangle", |v| {
        let (a, b, c) = (pt(v[0], v[1]), pt(v[2], v[3]), pt(v[4], v[5]));
        let area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
        let tri = if area > 0.01 {
            Triangle::new(a, b, c).ok()?
        } else if area < -0.01 {
            Triangle::new(a, c, b).ok()?
        } else {
            return None;
        };
        TriangleSoup::new(vec![tri]).ok()
    })
}

fn rigid() -> impl Strategy<Value = Transform> {
    (-0.5..0.5f64, -4.0..4.0f64, -4.0..4.0f64)
        .prop_map(|(a, tx, ty)| Transform::rigid(a, tx, ty))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn overlap_symmetry_translation(a in triangle_soup(), b in triangle_soup(),
                                    vx in -4.0..4.0f64, vy in -4.0..4.0f64) {
        let fwd = overlap_area(&a, &b, &Transform::translation(vx, vy));
        let bwd = overlap_area(&b, &a, &Transform::translation(-vx, -vy));
        prop_assert!((fwd - bwd).abs() <= 1e-9, "{fwd} vs {bwd}");
    }

    #[test]
    fn overlap_symmetry_rigid(a in triangle_soup(), b in triangle_soup(), r in rigid()) {
        let fwd = overlap_area(&a, &b, &r);
        let bwd = overlap_area(&b, &a, &invert(&r));
        prop_assert!((fwd - bwd).abs() <= 1e-9, "{fwd} vs {bwd}");
    }

    #[test]
    fn overlap_monotone_bound(a in triangle_soup(), b in triangle_soup(), r in rigid()) {
        let v = overlap_area(&a, &b, &r);
        prop_assert!(v >= 0.0);
        prop_assert!(v <= a.total_area().min(b.total_area()) + 1e-9);
    }

    #[test]
    fn transform_round_trip(r in rigid(), x in -5.0..5.0f64, y in -5.0..5.0f64) {
        let p = pt(x, y);
        let q = apply(&invert(&r), apply(&r, p));
        prop_assert!((q.x - p.x).abs() <= 1e-9 && (q.y - p.y).abs() <= 1e-9);
        let t = Transform::translation(x, y);
        let q2 = apply(&invert(&t), apply(&t, pt(y, x)));
        prop_assert!((q2.x - y).abs() <= 1e-9 && (q2.y - x).abs() <= 1e-9);
    }

    #[test]
    fn sampled_points_are_members(soup in triangle_soup(), seed in 0u64..1000) {
        let idx = build_area_index(&soup);
        let mut rng = RandomSource::new(seed, 0);
        for _ in 0..200 {
            let p = sample_point(&idx, &mut rng);
            prop_assert!(soup.contains(p), "({}, {}) outside soup", p.x, p.y);
        }
    }

    #[test]
    fn symmetric_difference_identity(a in triangle_soup(), b in triangle_soup(), r in rigid()) {
        let sd = symmetric_difference_area(&a, &b, &r);
        let expect = a.total_area() + b.total_area() - 2.0 * overlap_area(&a, &b, &r);
        prop_assert!((sd - expect).abs() <= 1e-9);
        prop_assert!(sd >= -1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn cloud_generation_deterministic(seed in 0u64..10_000) {
        let a = common::square(0.0, 0.0, 1.0);
        let b = common::square(0.2, -0.1, 1.0);
        for mode in [Mode::T, Mode::Rmra, Mode::Rm31] {
            let c1 = generate_cloud(mode, &a, &b, 200, seed).unwrap();
            let c2 = generate_cloud_serial(mode, &a, &b, 200, seed).unwrap();
            prop_assert_eq!(&c1, &c2);
        }
    }
}
