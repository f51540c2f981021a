//! Probabilistic maximum-overlap matching of planar shapes.
//!
//! Shapes are triangle soups. A random experiment draws points from both
//! shapes and casts one "vote" in transformation space (translations, or
//! rigid motions parameterized as (alpha, tx, ty) with alpha in revolutions
//! over [-1/2, 1/2)). Clusters of votes indicate transformations mapping a
//! large part of one shape onto the other; the output is a transformation
//! whose delta-neighborhood (max-norm box) contains the most votes.
//!
//! Modules:
//! - [`geometry`]: exact planar geometry (overlap area, shape statistics)
//! - [`sampling`]: uniform random points from a soup, deterministic substreams
//! - [`votes`]: the three vote-generating experiments
//! - [`depth`]: exact and approximate deepest-point search over vote clouds
//! - [`planner`]: theoretical parameter planning (delta, eta, vote counts)
//! - [`oracle`]: brute-force grid search and Monte Carlo overlap estimation

pub mod depth;
pub mod geometry;
pub mod oracle;
pub mod planner;
pub mod sampling;
pub mod votes;

pub use geometry::{Point2, RigidMotion, ShapeStats, Transform, Translation, Triangle, TriangleSoup};
pub use votes::{Mode, VoteCloud};
