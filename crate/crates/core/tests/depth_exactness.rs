//! Exactness of the sweep-based depth search against brute-force candidate
//! enumeration, plus structural depth properties (monotonicity, invariance,
//! wraparound behavior).

mod common;

use common::{brute_depth_2d, brute_depth_3d};
use probmatch::depth::{deepest_2d, deepest_3d, deepest_approx, DepthQuery};
use probmatch::geometry::Transform;
use probmatch::votes::{Mode, Vote, VoteCloud};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn t_cloud(pts: &[(f64, f64)]) -> VoteCloud {
    VoteCloud {
        mode: Mode::T,
        votes: pts
            .iter()
            .map(|&(x, y)| Vote { transform: Transform::translation(x, y) })
            .collect(),
        attempted: pts.len() as u64,
        rejected: 0,
    }
}

fn r_cloud(pts: &[(f64, f64, f64)]) -> VoteCloud {
    VoteCloud {
        mode: Mode::Rmra,
        votes: pts
            .iter()
            .map(|&(a, x, y)| Vote { transform: Transform::rigid(a, x, y) })
            .collect(),
        attempted: pts.len() as u64,
        rejected: 0,
    }
}

fn random_2d(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect()
}

fn random_3d(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64, f64)> {
    (0..n)
        .map(|_| (rng.gen::<f64>() - 0.5, rng.gen::<f64>() * 0.5, rng.gen::<f64>() * 0.5))
        .collect()
}

#[test]
fn sweep_2d_matches_brute_force() {
    let delta = 0.05;
    for seed in 0..25u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = random_2d(&mut rng, 80);
        let cloud = t_cloud(&pts);
        let r = deepest_2d(&cloud, &DepthQuery::translation(delta)).unwrap();
        let (bd, bx, by) = brute_depth_2d(&pts, delta, delta);
        assert_eq!(r.depth, bd, "seed {seed}");
        match r.argmax {
            Transform::Translation(t) => {
                assert_eq!(t.tx, bx, "seed {seed}");
                assert_eq!(t.ty, by, "seed {seed}");
            }
            _ => panic!(),
        }
    }
}

#[test]
fn sweep_3d_matches_brute_force() {
    let delta = 0.05;
    for seed in 0..15u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let pts = random_3d(&mut rng, 60);
        let cloud = r_cloud(&pts);
        let r = deepest_3d(&cloud, &DepthQuery::rigid(delta)).unwrap();
        let (bd, ba, bx, by) = brute_depth_3d(&pts, [delta; 3], true);
        assert_eq!(r.depth, bd, "seed {seed}");
        match r.argmax {
            Transform::Rigid(m) => {
                assert_eq!(m.alpha, ba, "seed {seed}");
                assert_eq!(m.tx, bx, "seed {seed}");
                assert_eq!(m.ty, by, "seed {seed}");
            }
            _ => panic!(),
        }
    }
}

#[test]
fn sweep_3d_matches_brute_force_without_wrap() {
    let delta = 0.04;
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);
        let pts = random_3d(&mut rng, 50);
        let cloud = r_cloud(&pts);
        let q = DepthQuery { delta, scale: [1.0; 3], angle_wrap: false };
        let r = deepest_3d(&cloud, &q).unwrap();
        let (bd, ba, bx, by) = brute_depth_3d(&pts, [delta; 3], false);
        assert_eq!(r.depth, bd, "seed {seed}");
        match r.argmax {
            Transform::Rigid(m) => {
                assert_eq!((m.alpha, m.tx, m.ty), (ba, bx, by), "seed {seed}");
            }
            _ => panic!(),
        }
    }
}

#[test]
fn wraparound_heavy_votes() {
    // Clusters straddling the angle boundary must merge under wrap.
    let delta = 0.03;
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + seed);
        let pts: Vec<(f64, f64, f64)> = (0..60)
            .map(|_| {
                let near = if rng.gen::<bool>() { 0.5 - rng.gen::<f64>() * 0.05 } else {
                    -0.5 + rng.gen::<f64>() * 0.05
                };
                (near, rng.gen::<f64>() * 0.1, rng.gen::<f64>() * 0.1)
            })
            .collect();
        let cloud = r_cloud(&pts);
        let r = deepest_3d(&cloud, &DepthQuery::rigid(delta)).unwrap();
        let (bd, ba, bx, by) = brute_depth_3d(&pts, [delta; 3], true);
        assert_eq!(r.depth, bd, "seed {seed}");
        match r.argmax {
            Transform::Rigid(m) => {
                assert_eq!((m.alpha, m.tx, m.ty), (ba, bx, by), "seed {seed}");
            }
            _ => panic!(),
        }
    }
}

#[test]
fn depth_monotone_in_delta() {
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(700 + seed);
        let pts = random_3d(&mut rng, 80);
        let cloud = r_cloud(&pts);
        let mut prev = 0;
        for &delta in &[0.02, 0.05, 0.1] {
            let d = deepest_3d(&cloud, &DepthQuery::rigid(delta)).unwrap().depth;
            assert!(d >= prev, "seed {seed}: depth decreased {prev} -> {d} at delta {delta}");
            prev = d;
        }
    }
}

#[test]
fn translation_invariance_2d() {
    let delta = 0.05;
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for _ in 0..10 {
        let pts = random_2d(&mut rng, 60);
        let (dx, dy) = (7.0, -3.0);
        let shifted: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x + dx, y + dy)).collect();
        let r0 = deepest_2d(&t_cloud(&pts), &DepthQuery::translation(delta)).unwrap();
        let r1 = deepest_2d(&t_cloud(&shifted), &DepthQuery::translation(delta)).unwrap();
        assert_eq!(r0.depth, r1.depth);
        match (r0.argmax, r1.argmax) {
            (Transform::Translation(a), Transform::Translation(b)) => {
                assert!((b.tx - a.tx - dx).abs() < 1e-9);
                assert!((b.ty - a.ty - dy).abs() < 1e-9);
            }
            _ => panic!(),
        }
    }
}

#[test]
fn wraparound_rotation_consistency() {
    // Rotating all angle coordinates by a constant (mod 1) preserves depth.
    let delta = 0.04;
    let mut rng = ChaCha8Rng::seed_from_u64(1100);
    for _ in 0..10 {
        let pts = random_3d(&mut rng, 60);
        let shift = rng.gen::<f64>() - 0.5;
        let rotated: Vec<(f64, f64, f64)> = pts
            .iter()
            .map(|&(a, x, y)| {
                let mut na = a + shift;
                if na >= 0.5 {
                    na -= 1.0;
                }
                if na < -0.5 {
                    na += 1.0;
                }
                (na, x, y)
            })
            .collect();
        let r0 = deepest_3d(&r_cloud(&pts), &DepthQuery::rigid(delta)).unwrap();
        let r1 = deepest_3d(&r_cloud(&rotated), &DepthQuery::rigid(delta)).unwrap();
        assert_eq!(r0.depth, r1.depth);
    }
}

#[test]
fn approx_guarantee_2d() {
    let delta = 0.05;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1300 + seed);
        let pts = random_2d(&mut rng, 120);
        let cloud = t_cloud(&pts);
        let q = DepthQuery::translation(delta);
        let exact = deepest_2d(&cloud, &q).unwrap();
        let approx = deepest_approx(&cloud, &q).unwrap();
        assert!(approx.depth <= exact.depth);
        let half = DepthQuery::translation(delta / 2.0);
        let exact_half = deepest_2d(&cloud, &half).unwrap();
        assert!(
            approx.depth >= exact_half.depth,
            "seed {seed}: approx {} < half-box exact {}",
            approx.depth,
            exact_half.depth
        );
    }
}

#[test]
fn per_axis_scale_is_respected() {
    // Two votes separated in y only; with an enlarged y scale they merge.
    let pts = [(0.0, 0.0, 0.0), (0.0, 0.0, 0.3)];
    let cloud = r_cloud(&pts);
    let narrow = DepthQuery::rigid(0.05);
    assert_eq!(deepest_3d(&cloud, &narrow).unwrap().depth, 1);
    let wide = DepthQuery { delta: 0.05, scale: [1.0, 1.0, 4.0], angle_wrap: true };
    assert_eq!(deepest_3d(&cloud, &wide).unwrap().depth, 2);
}
