//! Independent ground truth: exhaustive grid search over transformations and
//! Monte Carlo overlap estimation.
//!
//! Grid values are integer multiples of the step, so halving the step yields
//! a strict superset of grid points (refinement can only improve the result).
//! The returned value is within L_f * step of the true optimum, with
//! L_f = (sqrt2 + 2 pi D) * Delta the Lipschitz constant of the overlap
//! function itself.

use crate::geometry::{apply, bounding_box, overlap_area, Transform, TriangleSoup};
use crate::sampling::{build_area_index, sample_point, RandomSource};
use crate::votes::Mode;

/// Grid steps for the brute-force search. Translation ranges are derived
/// from the bounding boxes; the angle range is [-1/2, 1/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub translation_step: f64,
    pub angle_step: f64,
}

impl GridSpec {
    pub fn translation(step: f64) -> Self {
        GridSpec { translation_step: step, angle_step: 1.0 }
    }

    /// Rigid grid with the angle step chosen so that the worst-case point
    /// motion D * 2 pi * angle_step matches the translation step.
    pub fn rigid(step: f64, diameter: f64) -> Self {
        GridSpec {
            translation_step: step,
            angle_step: step / (2.0 * std::f64::consts::PI * diameter.max(step)),
        }
    }
}

/// Integer-multiple grid values of `step` covering [lo - step, hi + step].
fn grid_values(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let j_min = ((lo - step) / step).ceil() as i64;
    let j_max = ((hi + step) / step).floor() as i64;
    (j_min..=j_max).map(|j| j as f64 * step).collect()
}

/// Exhaustive overlap maximization over the grid. Ties broken toward the
/// lexicographically first grid index (angle, x, y). An empty search range
/// returns the identity transform with its overlap.
pub fn grid_search(
    a: &TriangleSoup,
    b: &TriangleSoup,
    mode: Mode,
    spec: &GridSpec,
) -> (Transform, f64) {
    let bb_a = bounding_box(a);
    let bb_b = bounding_box(b);
    let step = spec.translation_step;
    let (xs, ys, angles) = match mode {
        Mode::T => (
            grid_values(bb_b.min_x - bb_a.max_x, bb_b.max_x - bb_a.min_x, step),
            grid_values(bb_b.min_y - bb_a.max_y, bb_b.max_y - bb_a.min_y, step),
            vec![0.0],
        ),
        Mode::Rmra | Mode::Rm31 => {
            // Rotated A stays within the circle of radius R about the origin.
            let r = a
                .triangles()
                .iter()
                .flat_map(|t| t.vertices)
                .map(|v| v.x.hypot(v.y))
                .fold(0.0f64, f64::max);
            let n_angles = (1.0 / spec.angle_step).ceil().max(1.0) as i64;
            let angles = (0..n_angles)
                .map(|k| -0.5 + k as f64 / n_angles as f64)
                .collect();
            (
                grid_values(bb_b.min_x - r, bb_b.max_x + r, step),
                grid_values(bb_b.min_y - r, bb_b.max_y + r, step),
                angles,
            )
        }
    };
    if xs.is_empty() || ys.is_empty() {
        let id = match mode {
            Mode::T => Transform::translation(0.0, 0.0),
            _ => Transform::rigid(0.0, 0.0, 0.0),
        };
        let v = overlap_area(a, b, &id);
        return (id, v);
    }
    let mut best: Option<(Transform, f64)> = None;
    for &alpha in &angles {
        for &x in &xs {
            for &y in &ys {
                let t = match mode {
                    Mode::T => Transform::translation(x, y),
                    _ => Transform::rigid(alpha, x, y),
                };
                let v = overlap_area(a, b, &t);
                if best.as_ref().map_or(true, |&(_, bv)| v > bv) {
                    best = Some((t, v));
                }
            }
        }
    }
    best.unwrap()
}

/// Monte Carlo overlap estimate: |A| times the fraction of points a in A
/// with t(a) in B, plus the binomial standard error.
pub fn mc_overlap(
    a: &TriangleSoup,
    b: &TriangleSoup,
    t: &Transform,
    n_samples: u64,
    rng: &mut RandomSource,
) -> (f64, f64) {
    let idx = build_area_index(a);
    let mut hits = 0u64;
    for _ in 0..n_samples {
        let p = sample_point(&idx, rng);
        if b.contains(apply(t, p)) {
            hits += 1;
        }
    }
    let p_hat = hits as f64 / n_samples as f64;
    let area = a.total_area();
    (area * p_hat, area * (p_hat * (1.0 - p_hat) / n_samples as f64).sqrt())
}
