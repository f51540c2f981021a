//! The three random experiments that cast votes in transformation space.
//!
//! - T: draw a in A, b in B; vote Translation(b - a).
//! - RMRA: draw a, b and a uniform angle alpha; vote the unique rigid motion
//!   with rotation alpha mapping a onto b.
//! - RM3+1: draw a1, a2 in A, b1 in B and a uniform angle beta; construct
//!   b2 = b1 + |a2 - a1| * M_beta (1,0); reject unless b2 lies in B, else
//!   vote the rigid motion mapping (a1, a2) onto (b1, b2).
//!
//! Determinism contract: vote (or attempt) i of a run is a deterministic
//! function of (seed, i) — each experiment runs on its own random substream —
//! so parallel generation produces the same multiset, in the same order, as
//! the sequential fallback.

use crate::geometry::{normalize_alpha, Point2, RigidMotion, Transform, Translation, TriangleSoup};
use crate::sampling::{build_area_index, sample_point, AreaIndex, RandomSource};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VotesError {
    #[error(
        "no accepted 3+1 sample in {attempts} attempts; shapes are likely \
         incompatible with 3+1 sampling"
    )]
    AcceptanceStarvation { attempts: u64 },
}

/// Which random experiment generated a cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    T,
    #[serde(rename = "rmra")]
    Rmra,
    #[serde(rename = "rm31")]
    Rm31,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::T => "t",
            Mode::Rmra => "rmra",
            Mode::Rm31 => "rm31",
        })
    }
}

/// One transformation-space vote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vote {
    pub transform: Transform,
}

/// A multiset of votes plus rejection statistics (nonzero only for RM3+1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoteCloud {
    pub mode: Mode,
    pub votes: Vec<Vote>,
    pub attempted: u64,
    pub rejected: u64,
}

impl VoteCloud {
    /// Vote coordinates as (alpha, tx, ty); alpha = 0 for mode T.
    pub fn coords(&self) -> Vec<(f64, f64, f64)> {
        self.votes
            .iter()
            .map(|v| match v.transform {
                Transform::Translation(t) => (0.0, t.tx, t.ty),
                Transform::Rigid(r) => (r.alpha, r.tx, r.ty),
            })
            .collect()
    }

    /// CSV export: header `mode,alpha,tx,ty`, one row per vote, 17
    /// significant digits; alpha column empty for mode T.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "mode,alpha,tx,ty")?;
        for v in &self.votes {
            match v.transform {
                Transform::Translation(t) => {
                    writeln!(w, "{},,{:.16e},{:.16e}", self.mode, t.tx, t.ty)?
                }
                Transform::Rigid(r) => {
                    writeln!(w, "{},{:.16e},{:.16e},{:.16e}", self.mode, r.alpha, r.tx, r.ty)?
                }
            }
        }
        Ok(())
    }
}

/// One translation vote: Translation(b - a).
pub fn vote_translation(idx_a: &AreaIndex, idx_b: &AreaIndex, rng: &mut RandomSource) -> Vote {
    let a = sample_point(idx_a, rng);
    let b = sample_point(idx_b, rng);
    Vote { transform: Transform::Translation(Translation { tx: b.x - a.x, ty: b.y - a.y }) }
}

/// One rotation-angle vote: alpha uniform in [-1/2, 1/2), translation
/// b - M_alpha a.
pub fn vote_rmra(idx_a: &AreaIndex, idx_b: &AreaIndex, rng: &mut RandomSource) -> Vote {
    let a = sample_point(idx_a, rng);
    let b = sample_point(idx_b, rng);
    let alpha = rng.uniform() - 0.5;
    let theta = 2.0 * std::f64::consts::PI * alpha;
    let (s, c) = theta.sin_cos();
    Vote {
        transform: Transform::Rigid(RigidMotion {
            alpha: normalize_alpha(alpha),
            tx: b.x - (c * a.x - s * a.y),
            ty: b.y - (s * a.x + c * a.y),
        }),
    }
}

/// One 3+1 attempt. Returns `None` on rejection (constructed point b2
/// outside B, or the probability-zero event a1 == a2).
pub fn vote_rm31(idx_a: &AreaIndex, idx_b: &AreaIndex, rng: &mut RandomSource) -> Option<Vote> {
    let a1 = sample_point(idx_a, rng);
    let a2 = sample_point(idx_a, rng);
    let b1 = sample_point(idx_b, rng);
    let beta = rng.uniform() - 0.5;
    if a1 == a2 {
        return None;
    }
    let d = a1.distance(&a2);
    let tb = 2.0 * std::f64::consts::PI * beta;
    let b2 = Point2 { x: b1.x + d * tb.cos(), y: b1.y + d * tb.sin() };
    if !idx_b.soup().contains(b2) {
        return None;
    }
    // alpha = angle from a2-a1 to b2-b1, in revolutions.
    let theta_a = (a2.y - a1.y).atan2(a2.x - a1.x);
    let theta_b = (b2.y - b1.y).atan2(b2.x - b1.x);
    let alpha = normalize_alpha((theta_b - theta_a) / (2.0 * std::f64::consts::PI));
    let theta = 2.0 * std::f64::consts::PI * alpha;
    let (s, c) = theta.sin_cos();
    Some(Vote {
        transform: Transform::Rigid(RigidMotion {
            alpha,
            tx: b1.x - (c * a1.x - s * a1.y),
            ty: b1.y - (s * a1.x + c * a1.y),
        }),
    })
}

fn run_experiment(mode: Mode, idx_a: &AreaIndex, idx_b: &AreaIndex, seed: u64, i: u64) -> Option<Vote> {
    let mut rng = RandomSource::new(seed, i);
    match mode {
        Mode::T => Some(vote_translation(idx_a, idx_b, &mut rng)),
        Mode::Rmra => Some(vote_rmra(idx_a, idx_b, &mut rng)),
        Mode::Rm31 => vote_rm31(idx_a, idx_b, &mut rng),
    }
}

fn starvation_cap(n: u64) -> u64 {
    10_000_000u64.max(10_000 * n)
}

/// Generate a vote cloud, parallelizing experiments when the `parallel`
/// feature is enabled. Output is identical to [`generate_cloud_serial`] for
/// the same arguments.
#[cfg(feature = "parallel")]
pub fn generate_cloud(
    mode: Mode,
    a: &TriangleSoup,
    b: &TriangleSoup,
    n: u64,
    seed: u64,
) -> Result<VoteCloud, VotesError> {
    use rayon::prelude::*;

    let idx_a = build_area_index(a);
    let idx_b = build_area_index(b);
    match mode {
        Mode::T | Mode::Rmra => {
            let votes: Vec<Vote> = (0..n)
                .into_par_iter()
                .map(|i| run_experiment(mode, &idx_a, &idx_b, seed, i).unwrap())
                .collect();
            Ok(VoteCloud { mode, votes, attempted: n, rejected: 0 })
        }
        Mode::Rm31 => {
            // Attempt indices are pre-assigned; the cloud is the first n
            // acceptances in attempt-index order, batch by batch.
            let mut votes: Vec<Vote> = Vec::with_capacity(n as usize);
            let mut attempted: u64 = 0;
            let batch = (4 * n).clamp(4096, 1 << 20);
            let cap = starvation_cap(n);
            while (votes.len() as u64) < n {
                let results: Vec<Option<Vote>> = (attempted..attempted + batch)
                    .into_par_iter()
                    .map(|i| run_experiment(mode, &idx_a, &idx_b, seed, i))
                    .collect();
                for (off, res) in results.into_iter().enumerate() {
                    if let Some(v) = res {
                        votes.push(v);
                        if votes.len() as u64 == n {
                            attempted += off as u64 + 1;
                            let rejected = attempted - n;
                            return Ok(VoteCloud { mode, votes, attempted, rejected });
                        }
                    }
                }
                attempted += batch;
                if votes.is_empty() && attempted >= cap {
                    return Err(VotesError::AcceptanceStarvation { attempts: attempted });
                }
            }
            unreachable!()
        }
    }
}

/// Sequential fallback with identical output to [`generate_cloud`].
pub fn generate_cloud_serial(
    mode: Mode,
    a: &TriangleSoup,
    b: &TriangleSoup,
    n: u64,
    seed: u64,
) -> Result<VoteCloud, VotesError> {
    let idx_a = build_area_index(a);
    let idx_b = build_area_index(b);
    match mode {
        Mode::T | Mode::Rmra => {
            let votes: Vec<Vote> = (0..n)
                .map(|i| run_experiment(mode, &idx_a, &idx_b, seed, i).unwrap())
                .collect();
            Ok(VoteCloud { mode, votes, attempted: n, rejected: 0 })
        }
        Mode::Rm31 => {
            let mut votes: Vec<Vote> = Vec::with_capacity(n as usize);
            let mut attempted: u64 = 0;
            let cap = starvation_cap(n);
            while (votes.len() as u64) < n {
                if let Some(v) = run_experiment(mode, &idx_a, &idx_b, seed, attempted) {
                    votes.push(v);
                }
                attempted += 1;
                if votes.is_empty() && attempted >= cap {
                    return Err(VotesError::AcceptanceStarvation { attempts: attempted });
                }
            }
            let rejected = attempted - n;
            Ok(VoteCloud { mode, votes, attempted, rejected })
        }
    }
}

/// Generate a vote cloud (sequential build of the crate).
#[cfg(not(feature = "parallel"))]
pub fn generate_cloud(
    mode: Mode,
    a: &TriangleSoup,
    b: &TriangleSoup,
    n: u64,
    seed: u64,
) -> Result<VoteCloud, VotesError> {
    generate_cloud_serial(mode, a, b, n, seed)
}
