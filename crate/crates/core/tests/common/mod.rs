//! Shared fixtures and independent brute-force oracles for the integration
//! test suite. The depth oracles enumerate candidate event points directly
//! from the definition, using the same floating-point box-endpoint
//! expressions and closed comparisons as the implementation so that exact
//! equality of results is meaningful.

#![allow(dead_code)]

use probmatch::geometry::{Point2, Triangle, TriangleSoup};

pub fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y).unwrap()
}

pub fn square(x0: f64, y0: f64, side: f64) -> TriangleSoup {
    TriangleSoup::new(vec![
        Triangle::new(pt(x0, y0), pt(x0 + side, y0), pt(x0 + side, y0 + side)).unwrap(),
        Triangle::new(pt(x0, y0), pt(x0 + side, y0 + side), pt(x0, y0 + side)).unwrap(),
    ])
    .unwrap()
}

pub fn unit_square() -> TriangleSoup {
    square(0.0, 0.0, 1.0)
}

/// Unit square centered at the origin.
pub fn centered_square() -> TriangleSoup {
    square(-0.5, -0.5, 1.0)
}

/// L-shape from three unit squares: [0,2]x[0,1] plus [0,1]x[1,2], built so
/// adjacent squares share edges exactly (area 3, boundary 8, diameter
/// 2 sqrt2). Contains the origin.
pub fn l_shape() -> TriangleSoup {
    let mut tris = Vec::new();
    for &(x0, y0) in &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
        tris.push(
            Triangle::new(pt(x0, y0), pt(x0 + 1.0, y0), pt(x0 + 1.0, y0 + 1.0)).unwrap(),
        );
        tris.push(
            Triangle::new(pt(x0, y0), pt(x0 + 1.0, y0 + 1.0), pt(x0, y0 + 1.0)).unwrap(),
        );
    }
    TriangleSoup::new(tris).unwrap()
}

/// Regular n-gon of circumradius 1 about the origin, fan-triangulated from
/// vertex 0.
pub fn ngon(n: usize) -> TriangleSoup {
    let v = |k: usize| {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        pt(ang.cos(), ang.sin())
    };
    let mut tris = Vec::with_capacity(n - 2);
    for k in 1..n - 1 {
        tris.push(Triangle::new(v(0), v(k), v(k + 1)).unwrap());
    }
    TriangleSoup::new(tris).unwrap()
}

/// 10:1 rectangle [0,10]x[0,1].
pub fn thin_rectangle() -> TriangleSoup {
    TriangleSoup::new(vec![
        Triangle::new(pt(0.0, 0.0), pt(10.0, 0.0), pt(10.0, 1.0)).unwrap(),
        Triangle::new(pt(0.0, 0.0), pt(10.0, 1.0), pt(0.0, 1.0)).unwrap(),
    ])
    .unwrap()
}

/// Brute-force 2D max depth: evaluate the box count at every candidate
/// event value pair (all box edge coordinates), lexicographic tie-break.
pub fn brute_depth_2d(pts: &[(f64, f64)], hx: f64, hy: f64) -> (u64, f64, f64) {
    let mut xs: Vec<f64> = pts.iter().flat_map(|&(x, _)| [x - hx, x + hx]).collect();
    let mut ys: Vec<f64> = pts.iter().flat_map(|&(_, y)| [y - hy, y + hy]).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();
    let mut best: (u64, f64, f64) = (0, f64::INFINITY, f64::INFINITY);
    for &cx in &xs {
        for &cy in &ys {
            let d = pts
                .iter()
                .filter(|&&(x, y)| {
                    cx >= x - hx && cx <= x + hx && cy >= y - hy && cy <= y + hy
                })
                .count() as u64;
            if d > best.0 {
                best = (d, cx, cy);
            }
        }
    }
    best
}

/// Brute-force 3D max depth with optional circular angle axis, using the
/// same wrap representation as the implementation (duplicates shifted by
/// exactly +-1.0). Candidates: every in-range angle insertion event crossed
/// with the edge coordinates of the boxes active there.
pub fn brute_depth_3d(
    coords: &[(f64, f64, f64)],
    h: [f64; 3],
    wrap: bool,
) -> (u64, f64, f64, f64) {
    // Angle representatives per vote.
    let mut reps: Vec<(f64, usize)> = Vec::new();
    for (i, &(a, _, _)) in coords.iter().enumerate() {
        reps.push((a, i));
        if wrap {
            if a > 0.5 - h[0] {
                reps.push((a - 1.0, i));
            }
            if a < -0.5 + h[0] {
                reps.push((a + 1.0, i));
            }
        }
    }
    let mut alphas: Vec<f64> = reps
        .iter()
        .map(|&(a, _)| a - h[0])
        .filter(|&v| !wrap || (-0.5..0.5).contains(&v))
        .collect();
    alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    alphas.dedup();

    let mut best: (u64, f64, f64, f64) = (0, f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for &ca in &alphas {
        let mut active: Vec<(f64, f64)> = Vec::new();
        let mut last = usize::MAX;
        for &(a, i) in &reps {
            if i != last && ca >= a - h[0] && ca <= a + h[0] {
                active.push((coords[i].1, coords[i].2));
                last = i;
            }
        }
        if (active.len() as u64) <= best.0 {
            continue;
        }
        let (d, x, y) = brute_depth_2d(&active, h[1], h[2]);
        if d > best.0 {
            best = (d, ca, x, y);
        }
    }
    best
}
