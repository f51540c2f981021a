//! Parameter planning: Lipschitz constants, optimal box half-width delta and
//! density margin eta, and the vote counts guaranteeing an epsilon*|A|
//! approximation with probability 1 - tau.
//!
//! The closed forms come from optimizing the error budget of the voting
//! argument; they are astronomically conservative at desk scale (vote counts
//! can exceed u64 range, hence u128), so a plan is advisory and the pipeline
//! accepts explicit overrides. All logarithms are natural, matching the
//! e-base Chernoff bound the counts descend from.

use crate::geometry::{boundary_edges, Point2, ShapeStats, TriangleSoup};
use crate::votes::Mode;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("kappa must lie in (0, 1], got {0}")]
    KappaOutOfRange(f64),
}

/// Derived shape constants recorded alongside a plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanConstants {
    pub area_a: f64,
    pub area_b: f64,
    /// Boundary length Delta of shape A.
    pub boundary_a: f64,
    /// Diameter D of shape A.
    pub diameter_a: f64,
    pub lipschitz: f64,
    /// True when `lipschitz` is only an upper bound (RM3+1, where the
    /// normalizing constant c is bounded, never computed).
    pub lipschitz_is_bound: bool,
    /// Measure of a delta-box: 4 delta^2 (translations) or 8 delta^3.
    pub mu_delta: f64,
}

/// A full parameter plan for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchPlan {
    pub mode: Mode,
    pub epsilon: f64,
    pub tau: f64,
    pub kappa: Option<f64>,
    pub delta: f64,
    pub eta: f64,
    /// N for T/RMRA; M accepted votes for RM3+1.
    pub votes_needed: u128,
    /// Raw-attempt budget (RM3+1 only), from acceptance rate >= (kappa/4)^3.
    pub attempts_budget: Option<u128>,
    pub constants: PlanConstants,
}

fn rigid_factor(diameter: f64) -> f64 {
    std::f64::consts::SQRT_2 + 2.0 * PI * diameter
}

/// Lipschitz constant of the vote density for a mode. For RM3+1 this is an
/// upper bound (the constant c is replaced by its bound |A|^2 |B|).
pub fn lipschitz_constant(mode: Mode, stats_a: &ShapeStats, stats_b: &ShapeStats) -> f64 {
    let ab = stats_a.area * stats_b.area;
    match mode {
        Mode::T => std::f64::consts::SQRT_2 * stats_a.boundary_length / ab,
        Mode::Rmra => rigid_factor(stats_a.diameter) * stats_a.boundary_length / ab,
        Mode::Rm31 => {
            let c_bound = stats_a.area * stats_a.area * stats_b.area;
            2.0 * rigid_factor(stats_a.diameter)
                * stats_a.boundary_length
                * stats_a.area.min(stats_b.area)
                / c_bound
        }
    }
}

fn ceil_u128(x: f64) -> u128 {
    x.ceil().max(1.0) as u128
}

/// Plan for translation matching: delta = eps|A|/(9 sqrt2 Delta),
/// eta = eps^3 |A|^2 / (243 Delta^2 |B|),
/// N = ceil(max(16/eta^2 ln(1/tau) + 2, 80/eta^2 ln(80/eta^2))).
pub fn plan_translation(
    stats_a: &ShapeStats,
    stats_b: &ShapeStats,
    eps: f64,
    tau: f64,
) -> MatchPlan {
    let (a, b, d) = (stats_a.area, stats_b.area, stats_a.boundary_length);
    let delta = eps * a / (9.0 * std::f64::consts::SQRT_2 * d);
    let eta = eps.powi(3) * a * a / (243.0 * d * d * b);
    let n = ceil_u128(
        (16.0 / (eta * eta) * (1.0 / tau).ln() + 2.0)
            .max(80.0 / (eta * eta) * (80.0 / (eta * eta)).ln()),
    );
    debug_assert!(n as f64 > 6.0 / eta + 2.0);
    MatchPlan {
        mode: Mode::T,
        epsilon: eps,
        tau,
        kappa: None,
        delta,
        eta,
        votes_needed: n,
        attempts_budget: None,
        constants: PlanConstants {
            area_a: a,
            area_b: b,
            boundary_a: d,
            diameter_a: stats_a.diameter,
            lipschitz: lipschitz_constant(Mode::T, stats_a, stats_b),
            lipschitz_is_bound: false,
            mu_delta: 4.0 * delta * delta,
        },
    }
}

/// Plan for rotation-angle rigid matching:
/// delta = eps|A|/(8(sqrt2 + 2 pi D) Delta),
/// eta = eps^4 |A|^3 / (512 (sqrt2 + 2 pi D)^3 Delta^3 |B|),
/// N = ceil(max(16/eta^2 ln(1/tau) + 3, 112/eta^2 ln(112/eta^2))).
pub fn plan_rmra(stats_a: &ShapeStats, stats_b: &ShapeStats, eps: f64, tau: f64) -> MatchPlan {
    let (a, b, d) = (stats_a.area, stats_b.area, stats_a.boundary_length);
    let f = rigid_factor(stats_a.diameter);
    let delta = eps * a / (8.0 * f * d);
    let eta = eps.powi(4) * a.powi(3) / (512.0 * f.powi(3) * d.powi(3) * b);
    let n = ceil_u128(
        (16.0 / (eta * eta) * (1.0 / tau).ln() + 3.0)
            .max(112.0 / (eta * eta) * (112.0 / (eta * eta)).ln()),
    );
    MatchPlan {
        mode: Mode::Rmra,
        epsilon: eps,
        tau,
        kappa: None,
        delta,
        eta,
        votes_needed: n,
        attempts_budget: None,
        constants: PlanConstants {
            area_a: a,
            area_b: b,
            boundary_a: d,
            diameter_a: stats_a.diameter,
            lipschitz: lipschitz_constant(Mode::Rmra, stats_a, stats_b),
            lipschitz_is_bound: false,
            mu_delta: 8.0 * delta.powi(3),
        },
    }
}

/// Plan for 3+1-point rigid matching on a kappa-fat shape A:
/// delta = eps|A|/(16(sqrt2 + 2 pi D) Delta),
/// eta = eps^4 kappa |A|^3 / (4096 |B| (sqrt2 + 2 pi D)^3 Delta^3),
/// M = ceil(max(16/eta^2 ln(2/tau) + 3, 112/eta^2 ln(112/eta^2))),
/// acceptance rate p >= (kappa/4)^3,
/// attempts = ceil(max(2M/p, 8/p^2 ln(4/tau))).
pub fn plan_rm31(
    stats_a: &ShapeStats,
    stats_b: &ShapeStats,
    eps: f64,
    tau: f64,
    kappa: f64,
) -> Result<MatchPlan, PlannerError> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(PlannerError::KappaOutOfRange(kappa));
    }
    let (a, b, d) = (stats_a.area, stats_b.area, stats_a.boundary_length);
    let f = rigid_factor(stats_a.diameter);
    let delta = eps * a / (16.0 * f * d);
    let eta = eps.powi(4) * kappa * a.powi(3) / (4096.0 * b * f.powi(3) * d.powi(3));
    let m_f = (16.0 / (eta * eta) * (2.0 / tau).ln() + 3.0)
        .max(112.0 / (eta * eta) * (112.0 / (eta * eta)).ln());
    let m = ceil_u128(m_f);
    let p = (kappa / 4.0).powi(3);
    let attempts = ceil_u128((2.0 * m_f / p).max(8.0 / (p * p) * (4.0 / tau).ln()));
    Ok(MatchPlan {
        mode: Mode::Rm31,
        epsilon: eps,
        tau,
        kappa: Some(kappa),
        delta,
        eta,
        votes_needed: m,
        attempts_budget: Some(attempts),
        constants: PlanConstants {
            area_a: a,
            area_b: b,
            boundary_a: d,
            diameter_a: stats_a.diameter,
            lipschitz: lipschitz_constant(Mode::Rm31, stats_a, stats_b),
            lipschitz_is_bound: true,
            mu_delta: 8.0 * delta.powi(3),
        },
    })
}

/// Relative-error plan: guarantees a (1 - eps) fraction of the optimum for
/// kappa-fat inputs by substituting eps' = eps * kappa into the absolute
/// formulas.
pub fn plan_relative(
    mode: Mode,
    stats_a: &ShapeStats,
    stats_b: &ShapeStats,
    eps: f64,
    tau: f64,
    kappa: f64,
) -> Result<MatchPlan, PlannerError> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(PlannerError::KappaOutOfRange(kappa));
    }
    let eps_abs = eps * kappa;
    match mode {
        Mode::T => Ok(plan_translation(stats_a, stats_b, eps_abs, tau)),
        Mode::Rmra => Ok(plan_rmra(stats_a, stats_b, eps_abs, tau)),
        Mode::Rm31 => plan_rm31(stats_a, stats_b, eps_abs, tau, kappa),
    }
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p.x - (a.x + t * dx)).hypot(p.y - (a.y + t * dy))
}

/// Lower-bound estimate of the fatness kappa of a shape: maximize the
/// distance to the boundary over a grid of interior points, validate the
/// resulting circle by sampling points on it (shrinking on any miss), and
/// return pi r^2 / |A| clamped to 1.
pub fn estimate_kappa(soup: &TriangleSoup, grid_resolution: usize) -> f64 {
    let bbox = crate::geometry::bounding_box(soup);
    let edges = boundary_edges(soup).expect("soup validated at construction");
    let res = grid_resolution.max(2);
    let mut best_r = 0.0f64;
    let mut best_p = Point2 { x: bbox.min_x, y: bbox.min_y };
    for iy in 0..=res {
        let y = bbox.min_y + bbox.height() * iy as f64 / res as f64;
        for ix in 0..=res {
            let x = bbox.min_x + bbox.width() * ix as f64 / res as f64;
            let p = Point2 { x, y };
            if !soup.contains(p) {
                continue;
            }
            let r = edges
                .iter()
                .map(|&(a, b)| point_segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min);
            if r > best_r {
                best_r = r;
                best_p = p;
            }
        }
    }
    if best_r <= 0.0 || !best_r.is_finite() {
        return 0.0;
    }
    // Validate the inscribed circle by sampling its boundary; shrink on any
    // sampled point falling outside the soup.
    let mut r = best_r;
    'shrink: for _ in 0..64 {
        for k in 0..64 {
            let ang = 2.0 * PI * k as f64 / 64.0;
            let q = Point2 { x: best_p.x + r * ang.cos(), y: best_p.y + r * ang.sin() };
            if !soup.contains(q) {
                r *= 0.999;
                continue 'shrink;
            }
        }
        break;
    }
    (PI * r * r / soup.total_area()).min(1.0)
}
