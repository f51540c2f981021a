//! JSON report structures printed to stdout. Field order is fixed by the
//! struct definitions, so identical runs produce byte-identical reports
//! apart from the timing fields.

use probmatch::geometry::Transform;
use probmatch::planner::{MatchPlan, PlanConstants};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct PlanReport {
    pub mode: String,
    pub epsilon: f64,
    pub tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    pub delta: f64,
    pub eta: f64,
    /// Decimal string: theoretical counts can exceed 64-bit range.
    pub votes_needed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts_budget: Option<String>,
    pub constants: PlanConstants,
}

impl From<&MatchPlan> for PlanReport {
    fn from(p: &MatchPlan) -> Self {
        PlanReport {
            mode: p.mode.to_string(),
            epsilon: p.epsilon,
            tau: p.tau,
            kappa: p.kappa,
            delta: p.delta,
            eta: p.eta,
            votes_needed: p.votes_needed.to_string(),
            attempts_budget: p.attempts_budget.map(|a| a.to_string()),
            constants: p.constants,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct UsedParams {
    pub n_votes: u64,
    pub n_votes_override: bool,
    pub delta: f64,
    pub delta_override: bool,
    pub depth_method: String,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub step: f64,
    pub transform: Transform,
    pub value: f64,
    /// oracle value minus result overlap.
    pub gap: f64,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub voting_ms: f64,
    pub depth_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct MatchReport {
    pub mode: String,
    pub seed: u64,
    pub plan: PlanReport,
    pub used: UsedParams,
    pub attempted: u64,
    pub rejected: u64,
    pub result: Transform,
    pub depth: u64,
    pub approx_factor: f64,
    /// depth / (n_votes * mu_delta) with the delta actually used.
    pub estimated_density: f64,
    pub overlap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub timings: Timings,
}
