//! Command-line front end: load shapes, triangulate polygons, plan
//! parameters, run the vote/depth matching pipeline, and report results.
//!
//! Exit codes: 0 success, 1 generic failure, 2 invalid shape input,
//! 3 rejection-sampling starvation (rm31), 4 conflicting flags.

mod earclip;
mod report;
mod shapefile;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use probmatch::depth::{
    deepest_approx, deepest_exact, DepthQuery, DepthResult,
};
use probmatch::geometry::{overlap_area, shape_stats, ShapeStats, Transform, TriangleSoup};
use probmatch::oracle::{grid_search, GridSpec};
use probmatch::planner::{estimate_kappa, plan_rm31, plan_rmra, plan_translation, MatchPlan};
use probmatch::votes::{generate_cloud, Mode, VotesError};
use report::{MatchReport, OracleReport, PlanReport, Timings, UsedParams};
use std::path::PathBuf;
use std::time::Instant;

const EXIT_INVALID_SHAPES: i32 = 2;
const EXIT_STARVATION: i32 = 3;
const EXIT_CONFLICTING_FLAGS: i32 = 4;

/// Largest planned vote count the pipeline will run without an explicit
/// --n-votes override; theoretical plans are deliberately conservative.
const MAX_PLANNED_VOTES: u128 = 100_000_000;

struct CliError {
    code: i32,
    error: anyhow::Error,
}

fn fail(code: i32, error: impl Into<anyhow::Error>) -> CliError {
    CliError { code, error: error.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    T,
    Rmra,
    Rm31,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::T => Mode::T,
            ModeArg::Rmra => Mode::Rmra,
            ModeArg::Rm31 => Mode::Rm31,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DepthArg {
    Exact,
    Approx,
}

#[derive(Parser)]
#[command(
    name = "probmatch",
    about = "Probabilistic maximum-overlap matching of planar shapes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline: plan, vote, find the deepest cluster, report.
    Match(MatchArgs),
    /// Print area, boundary length, diameter and bounding box of a shape.
    Stats { shape: PathBuf },
    /// Brute-force grid search for the maximum overlap (ground truth).
    Oracle(OracleArgs),
    /// Triangulate a polygon shape file into a triangle shape file.
    Triangulate {
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the theoretical parameter plan without running the pipeline.
    Plan(PlanArgs),
}

#[derive(Args)]
struct MatchArgs {
    shape_a: PathBuf,
    shape_b: PathBuf,
    #[arg(long, value_enum, default_value = "t")]
    mode: ModeArg,
    /// Target absolute error, as a fraction of |A|.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Failure probability bound.
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Fatness of A (rm31 only); estimated from A when omitted.
    #[arg(long)]
    kappa: Option<f64>,
    /// Override the planned vote count.
    #[arg(long)]
    n_votes: Option<u64>,
    /// Override the planned box half-width.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    depth: DepthArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vote-generation thread count (results are identical for any value).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the vote cloud as CSV to this path.
    #[arg(long)]
    emit_votes: Option<PathBuf>,
    /// Also run the grid-search oracle with this translation step and report
    /// the gap to its optimum.
    #[arg(long)]
    oracle_step: Option<f64>,
}

#[derive(Args)]
struct OracleArgs {
    shape_a: PathBuf,
    shape_b: PathBuf,
    #[arg(long, value_enum, default_value = "t")]
    mode: ModeArg,
    /// Translation grid step.
    #[arg(long)]
    step: f64,
}

#[derive(Args)]
struct PlanArgs {
    shape_a: PathBuf,
    shape_b: PathBuf,
    #[arg(long, value_enum, default_value = "t")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    #[arg(long)]
    kappa: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Match(args) => cmd_match(args),
        Cmd::Stats { shape } => cmd_stats(shape),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::Triangulate { input, output } => cmd_triangulate(input, output),
        Cmd::Plan(args) => cmd_plan(args),
    };
    if let Err(e) = result {
        eprintln!("error: {:#}", e.error);
        std::process::exit(e.code);
    }
}

fn load(path: &PathBuf) -> Result<TriangleSoup, CliError> {
    shapefile::load_shape(path).map_err(|e| fail(EXIT_INVALID_SHAPES, e))
}

fn stats_of(soup: &TriangleSoup) -> Result<ShapeStats, CliError> {
    shape_stats(soup).map_err(|e| fail(EXIT_INVALID_SHAPES, e))
}

fn make_plan(
    mode: Mode,
    a: &TriangleSoup,
    sa: &ShapeStats,
    sb: &ShapeStats,
    epsilon: f64,
    tau: f64,
    kappa_flag: Option<f64>,
) -> Result<MatchPlan, CliError> {
    match mode {
        Mode::T => Ok(plan_translation(sa, sb, epsilon, tau)),
        Mode::Rmra => Ok(plan_rmra(sa, sb, epsilon, tau)),
        Mode::Rm31 => {
            let kappa = kappa_flag.unwrap_or_else(|| estimate_kappa(a, 200));
            plan_rm31(sa, sb, epsilon, tau, kappa)
                .map_err(|e| fail(EXIT_CONFLICTING_FLAGS, e))
        }
    }
}

fn cmd_match(args: MatchArgs) -> Result<(), CliError> {
    if args.kappa.is_some() && args.mode != ModeArg::Rm31 {
        return Err(fail(
            EXIT_CONFLICTING_FLAGS,
            anyhow!("--kappa only applies to --mode rm31"),
        ));
    }
    let total_start = Instant::now();
    let a = load(&args.shape_a)?;
    let b = load(&args.shape_b)?;
    let sa = stats_of(&a)?;
    let sb = stats_of(&b)?;
    let mode = Mode::from(args.mode);
    let plan = make_plan(mode, &a, &sa, &sb, args.epsilon, args.tau, args.kappa)?;

    let n_votes = match args.n_votes {
        Some(n) => n,
        None => {
            if plan.votes_needed > MAX_PLANNED_VOTES {
                return Err(fail(
                    1,
                    anyhow!(
                        "the theoretical plan asks for {} votes (> {}); the bounds are \
                         conservative — pass --n-votes to run with an empirical count",
                        plan.votes_needed,
                        MAX_PLANNED_VOTES
                    ),
                ));
            }
            plan.votes_needed as u64
        }
    };
    let delta = args.delta.unwrap_or(plan.delta);

    let voting_start = Instant::now();
    let generate = || generate_cloud(mode, &a, &b, n_votes, args.seed);
    let cloud = match args.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| fail(1, e))?
            .install(generate),
        None => generate(),
    }
    .map_err(|e| match e {
        VotesError::AcceptanceStarvation { .. } => fail(EXIT_STARVATION, e),
    })?;
    let voting_ms = voting_start.elapsed().as_secs_f64() * 1e3;

    if let Some(path) = &args.emit_votes {
        let file = std::fs::File::create(path)
            .with_context(|| format!("cannot create {}", path.display()))
            .map_err(|e| fail(1, e))?;
        cloud.write_csv(std::io::BufWriter::new(file)).map_err(|e| fail(1, e))?;
    }

    let query = match mode {
        Mode::T => DepthQuery::translation(delta),
        Mode::Rmra | Mode::Rm31 => DepthQuery::rigid(delta),
    };
    let depth_start = Instant::now();
    let result: DepthResult = match args.depth {
        DepthArg::Exact => deepest_exact(&cloud, &query),
        DepthArg::Approx => deepest_approx(&cloud, &query),
    }
    .map_err(|e| fail(1, e))?;
    let depth_ms = depth_start.elapsed().as_secs_f64() * 1e3;

    let mu = match mode {
        Mode::T => 4.0 * delta * delta,
        Mode::Rmra | Mode::Rm31 => 8.0 * delta.powi(3),
    };
    let overlap = overlap_area(&a, &b, &result.argmax);
    let oracle = args.oracle_step.map(|step| {
        let spec = match mode {
            Mode::T => GridSpec::translation(step),
            Mode::Rmra | Mode::Rm31 => GridSpec::rigid(step, sa.diameter),
        };
        let (t, value) = grid_search(&a, &b, mode, &spec);
        OracleReport { step, transform: t, value, gap: value - overlap }
    });

    let report = MatchReport {
        mode: mode.to_string(),
        seed: args.seed,
        plan: PlanReport::from(&plan),
        used: UsedParams {
            n_votes,
            n_votes_override: args.n_votes.is_some(),
            delta,
            delta_override: args.delta.is_some(),
            depth_method: match args.depth {
                DepthArg::Exact => "exact".into(),
                DepthArg::Approx => "approx".into(),
            },
        },
        attempted: cloud.attempted,
        rejected: cloud.rejected,
        result: result.argmax,
        depth: result.depth,
        approx_factor: result.approx_factor,
        estimated_density: result.depth as f64 / (n_votes as f64 * mu),
        overlap,
        oracle,
        timings: Timings {
            voting_ms,
            depth_ms,
            total_ms: total_start.elapsed().as_secs_f64() * 1e3,
        },
    };
    println!("{}", serde_json::to_string_pretty(&report).map_err(|e| fail(1, e))?);
    Ok(())
}

fn cmd_stats(shape: PathBuf) -> Result<(), CliError> {
    let soup = load(&shape)?;
    let stats = stats_of(&soup)?;
    println!("{}", serde_json::to_string_pretty(&stats).map_err(|e| fail(1, e))?);
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let a = load(&args.shape_a)?;
    let b = load(&args.shape_b)?;
    let sa = stats_of(&a)?;
    let mode = Mode::from(args.mode);
    let spec = match mode {
        Mode::T => GridSpec::translation(args.step),
        Mode::Rmra | Mode::Rm31 => GridSpec::rigid(args.step, sa.diameter),
    };
    let (transform, value) = grid_search(&a, &b, mode, &spec);
    #[derive(serde::Serialize)]
    struct OracleOut {
        mode: String,
        step: f64,
        angle_step: f64,
        transform: Transform,
        value: f64,
    }
    let out = OracleOut {
        mode: mode.to_string(),
        step: spec.translation_step,
        angle_step: spec.angle_step,
        transform,
        value,
    };
    println!("{}", serde_json::to_string_pretty(&out).map_err(|e| fail(1, e))?);
    Ok(())
}

fn cmd_triangulate(input: PathBuf, output: Option<PathBuf>) -> Result<(), CliError> {
    let soup = load(&input)?;
    let triangles: Vec<[[f64; 2]; 3]> = soup
        .triangles()
        .iter()
        .map(|t| {
            let [a, b, c] = t.vertices;
            [[a.x, a.y], [b.x, b.y], [c.x, c.y]]
        })
        .collect();
    #[derive(serde::Serialize)]
    struct TriOut {
        triangles: Vec<[[f64; 2]; 3]>,
    }
    let text =
        serde_json::to_string_pretty(&TriOut { triangles }).map_err(|e| fail(1, e))?;
    match output {
        Some(path) => std::fs::write(&path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(|e| fail(1, e))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_plan(args: PlanArgs) -> Result<(), CliError> {
    if args.kappa.is_some() && args.mode != ModeArg::Rm31 {
        return Err(fail(
            EXIT_CONFLICTING_FLAGS,
            anyhow!("--kappa only applies to --mode rm31"),
        ));
    }
    let a = load(&args.shape_a)?;
    let b = load(&args.shape_b)?;
    let sa = stats_of(&a)?;
    let sb = stats_of(&b)?;
    let mode = Mode::from(args.mode);
    let plan = make_plan(mode, &a, &sa, &sb, args.epsilon, args.tau, args.kappa)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&PlanReport::from(&plan)).map_err(|e| fail(1, e))?
    );
    Ok(())
}
